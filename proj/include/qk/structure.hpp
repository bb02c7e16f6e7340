#pragma once

#include <array>

#include "qk/presheaf.hpp"

namespace qk {

/// One decided property. A false value carries the failing datum (a
/// presheaf, a tensor triple, a conical family, or a fibre subset); a true
/// value was established by exhausting the defining data within caps.
struct FlagWitness {
    bool value = false;
    std::string witness;
};

/// total: every presheaf has a supremum (cototal: every copresheaf an
/// infimum). tensored: tensor(x, t, u) exists for every object x, base
/// object t and arrow u: |x| -> t (cotensored dual). conically cocomplete:
/// for every subset of every fibre, the join of the representables of its
/// members has a supremum; this is strictly stronger than the fibre join
/// existing. order-complete: every fibre has all joins.
FlagWitness is_total(QCatPtr e, const Caps& caps = {});
FlagWitness is_cototal(QCatPtr e, const Caps& caps = {});
FlagWitness is_tensored(QCatPtr e, const Caps& caps = {});
FlagWitness is_cotensored(QCatPtr e, const Caps& caps = {});
FlagWitness is_conically_cocomplete(QCatPtr e, const Caps& caps = {});
FlagWitness is_conically_complete(QCatPtr e, const Caps& caps = {});
FlagWitness is_order_complete(QCatPtr e, const Caps& caps = {});

struct StructureReport {
    FlagWitness total, cototal, tensored, cotensored;
    FlagWitness conically_cocomplete, conically_complete, order_complete;
    std::size_t presheaf_count = 0;
    std::size_t copresheaf_count = 0;
    double seconds = 0.0;
};
StructureReport structure_report(QCatPtr e, const Caps& caps = {});

/// Eight characterizations of totality, each decided through its own code
/// path:
///   0  the Yoneda embedding has a left adjoint (searched object by object
///      in the enumerated presheaf category)
///   1  every weight over every full-subcategory inclusion has a colimit
///   2  every presheaf has a supremum
///   3  tensored and conically cocomplete
///   4  condition 0 for the opposite category
///   5  every weight over every full-subcategory inclusion has a limit
///   6  every copresheaf has an infimum
///   7  cotensored and conically complete
/// These are provably equivalent, so any disagreement is an engine defect
/// and throws; the report only ever leaves with all eight equal.
struct EquivalenceReport {
    std::array<bool, 8> conditions{};
    bool value = false;
};
EquivalenceReport verify_totality_equivalences(QCatPtr e, const Caps& caps = {});

/// Right adjoint search for f. The brute-force pass (an extent-preserving
/// object map g with src(x, gy) = dst(fx, y) everywhere) always runs. When
/// the source is tensored and order-complete, the preservation criterion
/// (f preserves tensors and all fibre joins) is decided independently, must
/// agree with the search, and the returned adjoint is the fibre-wise one:
/// gy = join of every x with fx <= y. Diagnostics: PreconditionFailed,
/// TensorNotPreserved, JoinNotPreserved.
struct AdjointSearch {
    bool preconditions_ok = false;
    bool exists = false;
    std::optional<QFunctor> right;
    std::vector<Diagnostic> diagnostics;
};
AdjointSearch has_right_adjoint(const QFunctor& f, const Caps& caps = {});

/// Extension of f: C -> E along a fully faithful g: C -> D when E is
/// total: H(y) is the supremum of the pushforward along f of the presheaf
/// D(g-, y), and H o g is objectwise isomorphic to f. Diagnoses NotTotal
/// and NotFullyFaithful.
Checked<QFunctor> injective_extension(const QFunctor& f, const QFunctor& g,
                                      const Caps& caps = {});

/// Searches for H: D -> E with H o G isomorphic to the identity, where D
/// is the full subcategory of the presheaf category on the representables
/// plus phi, and G corestricts the Yoneda embedding. The search is
/// exhaustive over extent-preserving object maps; an H exists exactly when
/// phi has a supremum, and then H(phi) lands in the supremum class.
std::optional<QFunctor> yoneda_extension(QCatPtr e, const Presheaf& phi,
                                         const Caps& caps = {});

/// Random category over q: extents and hom entries sampled uniformly, then
/// unit and composition defects repaired by join saturation to a fixpoint.
QCatPtr random_qcategory(QuantaloidPtr q, int n_objects, Rng& rng);

}  // namespace qk
