#pragma once

#include "qk/structure.hpp"

namespace qk {

/// A category of structured objects over a finite base category: every
/// object X sits over a base object |X| (its extent), and the morphisms
/// X -> Y form a chosen subset of the base maps |X| -> |Y|, encoded as a
/// bitmask over the base hom-list. The subsets contain the identity of
/// each extent and are closed under base composition; values of this type
/// satisfy those laws (build via validate_concrete).
struct ConcreteCategory {
    FiniteCategory base;
    std::vector<std::string> objects;
    std::vector<int> extent;               // object -> base object
    std::vector<std::vector<Val>> morph;   // morph[x][y] over base hom(|x|,|y|)

    int size() const { return static_cast<int>(objects.size()); }
    int object_index(const std::string& name) const;
};

/// Diagnoses DuplicateName, BadElement (extent or mask out of range),
/// IdentityMissing (object) and NotClosed (composable pair whose composite
/// is missing).
Checked<ConcreteCategory> validate_concrete(FiniteCategory base,
                                            std::vector<std::string> objects,
                                            std::vector<int> extent,
                                            std::vector<std::vector<Val>> morph);

/// The powerset quantaloid of a base category, shared so that several
/// categories over the same base can interoperate.
QuantaloidPtr free_quantaloid(const FiniteCategory& base, const Caps& caps = {});

/// The same data as a category enriched in the powerset quantaloid of its
/// base; qb must be free over a presentation equal to e.base. The
/// concreteness laws are re-verified through the enriched laws.
QCatPtr encode(QuantaloidPtr qb, const ConcreteCategory& e);

/// Reads a category over a powerset quantaloid back as a concrete
/// category. Diagnoses NotFree.
Checked<ConcreteCategory> decode(QCatPtr enc);

/// The same objects over the opposite base, with all morphism sets
/// transposed.
ConcreteCategory dual_concrete(const ConcreteCategory& e);

/// A structure-preserving map over a shared base: extents are kept and
/// every morphism set of e is contained in the corresponding set of d.
/// Diagnoses DifferentBase, BadElement, ExtentNotPreserved, HomInequality.
Checked<std::vector<int>> validate_concrete_functor(const ConcreteCategory& e,
                                                    const ConcreteCategory& d,
                                                    std::vector<int> map);

/// f <= g iff for every object x the identity of |x| is a d-morphism from
/// f(x) to g(x).
bool concrete_functor_leq(const ConcreteCategory& d, const std::vector<int>& f,
                          const std::vector<int>& g);

/// Exhaustive agreement between the concrete and the enriched readings:
/// every extent-preserving object map e -> d passes the subset test
/// exactly when its encoding passes the enriched functor laws, and the two
/// pointwise orders coincide on all accepted pairs. Disagreement throws.
struct AgreementReport {
    long long maps = 0;
    long long functors = 0;
    long long ordered_pairs = 0;
};
AgreementReport check_concrete_enriched_agreement(QuantaloidPtr qb, const ConcreteCategory& e,
                                                  const ConcreteCategory& d,
                                                  const Caps& caps = {});

/// A family of arrows into a common target object: comp[x]: |x| -> target.
/// No closure condition is required on input.
struct StructuredSink {
    int target = -1;
    std::vector<Val> comp;
};
/// Dual: a family of arrows out of a common target: comp[x]: target -> |x|.
struct StructuredSource {
    int target = -1;
    std::vector<Val> comp;
};

/// Least enlargement of the sink that is closed under precomposition with
/// category morphisms, returned as a presheaf. A single saturation pass
/// reaches the closure (the hom sets are themselves composition-closed);
/// the implementation re-runs the pass anyway and insists the first one
/// already got there.
Presheaf normalize_sink(QCatPtr enc, const StructuredSink& s);
CoPresheaf normalize_source(QCatPtr enc, const StructuredSource& s);

/// The best structure on the target compatible with the sink: the
/// supremum class of the normalized sink. The lifting requirement computed
/// from the raw family and from its normalization must agree, and absence
/// is a value.
std::optional<ObjClass> final_lift(QCatPtr enc, const StructuredSink& s);
std::optional<ObjClass> initial_lift(QCatPtr enc, const StructuredSource& s);

/// Whether every sink admits a final lifting. Decided through totality of
/// the category and independently cross-checked by enumerating every
/// normalized sink and lifting it; the two decisions must agree. The
/// witness of a false flag is a sink with no lifting.
struct TopologicalReport {
    FlagWitness flag;
    std::size_t sinks = 0;
};
TopologicalReport is_topological(QCatPtr enc, const Caps& caps = {});

/// Whether every single base map out of (dually, into) an object has a
/// best lifting. Requires a powerset-quantaloid category; each single-map
/// lifting is cross-checked against the tensor (cotensor) by its atom. A
/// false witness names the object and the map.
FlagWitness is_cofibred(QCatPtr enc);
FlagWitness is_fibred(QCatPtr enc);

/// Tensors decompose into single-map liftings: the category is tensored
/// exactly when every single map lifts and, for every set of parallel maps
/// out of an object, some object realizes the intersection of the rows of
/// the single-map liftings. Both sides are decided independently and must
/// agree; the returned flag is the tensored one.
FlagWitness check_tensor_decomposition(QCatPtr enc, const Caps& caps = {});

/// Three equivalent readings of "every sink lifts", each decided on its
/// own: directly, on the dual category over the opposite base, and as
/// fibred + cofibred + all fibres order-complete. The dual decision is
/// cross-checked against infima of the original, fibre joins must yield
/// conical suprema on fibred order-complete instances, and conical suprema
/// must yield tensors on cofibred ones. Any disagreement throws.
struct DualityReport {
    FlagWitness topological;
    FlagWitness dual_topological;
    FlagWitness fibred, cofibred, fibres_complete;
    bool agree = false;
};
DualityReport check_topological_duality(QuantaloidPtr qb, const ConcreteCategory& e,
                                        const Caps& caps = {});

/// Bounded initiality of the family of hom-into functors e(x,-) from e to
/// the one-object base viewed as a category over itself: for every
/// category w over the base with at most probe_bound objects and every
/// object map w -> e, the map is a functor exactly when all composites
/// with the hom-into functors are. Exhausts all hom matrices within caps;
/// the verdict is relative to the bound and reported as such. Diagnoses
/// NotAQuantale for a multi-object base.
Checked<FlagWitness> check_initial_source(QCatPtr e, int probe_bound, const Caps& caps = {});

/// Factorization of a functor into a complete category through the sink
/// completion of its source: factor = supremum after pushforward on the
/// presheaf category pe, with factor after yon isomorphic to the original
/// functor. The factorization is forced into the colimit class at every
/// presheaf, is itself a left adjoint, and is unique up to isomorphy among
/// left adjoints with the same restriction; the uniqueness search runs
/// exhaustively when the candidate count fits the caps and is skipped
/// (search_exhaustive = false) otherwise. Diagnoses NotTotal.
struct HullReport {
    PresheafCat pe;
    QFunctor yon;     // source -> pe
    QFunctor factor;  // pe -> destination
    long long alternatives = 0;
    bool search_exhaustive = false;
};
Checked<HullReport> presheaf_hull_factorization(const QFunctor& f, const Caps& caps = {});

}  // namespace qk
