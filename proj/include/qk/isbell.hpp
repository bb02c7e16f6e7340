#pragma once

#include "qk/structure.hpp"

namespace qk {

/// Antitone transforms induced by a distributor Phi: E -|-> D, computed
/// through the distributor residuals against a one-object category at the
/// argument's extent:
///   up(p)_y   = meet_x left_residual(Phi(x,y), p_x)
///   down(s)_x = meet_y right_residual(s_y, Phi(x,y))
/// They form a Galois adjunction: hom_coPE(up p, s) = hom_PE(p, down s).
/// TypeMismatch when the argument does not live over the matching foot.
Checked<CoPresheaf> isbell_up(const QDistributor& phi, const Presheaf& p);
Checked<Presheaf> isbell_down(const QDistributor& phi, const CoPresheaf& s);

/// Exhaustive law audit for the transforms of one distributor: the
/// adjunction identity on every (presheaf, copresheaf) pair, antitonicity
/// on comparable pairs, and the closure laws (inflationary, idempotent,
/// up o down o up = up and dually). Any violation throws; the report only
/// carries the sweep sizes.
struct IsbellLawReport {
    std::size_t presheaves = 0;
    std::size_t copresheaves = 0;
    long long pairs = 0;
};
IsbellLawReport verify_isbell_laws(const QDistributor& phi, const Caps& caps = {});

/// Fixed points of down o up, as a full subcategory of the presheaves over
/// the first foot. `reflect` sends every presheaf (enumeration order) to
/// its closure, which is left adjoint to the inclusion:
/// hom(points[reflect[i]], points[k]) = hom_PE(all[i], points[k]); this is
/// verified on construction.
struct IsbellCat {
    QCatPtr cat;                  // objects named p<i> by enumeration index
    std::vector<Presheaf> points; // fixed presheaves, in enumeration order
    std::vector<Presheaf> all;    // the full presheaf enumeration
    std::vector<int> reflect;     // all[i] closes to points[reflect[i]]

    int point_index(const Presheaf& p) const;  // -1 when p is not fixed
};
IsbellCat isbell_category(const QDistributor& phi, const Caps& caps = {});

/// Whether (f, g) is a morphism of distributors phi -> psi: f maps first
/// foot to first foot, g maps the target's second foot to the source's
/// second foot, and psi o graph(f) = cograph(g) o phi. The equivalent
/// diagonal form (psi residuated by cograph(f) equals phi residuated by
/// graph(g)) is decided independently and must agree. A false value names
/// the first entry where the two composites differ.
Checked<FlagWitness> is_chu_transform(const QDistributor& phi, const QDistributor& psi,
                                      const QFunctor& f, const QFunctor& g);

/// The functor between fixed-point categories induced by a morphism of
/// distributors: each fixed point is pushed forward along f and then
/// closed in the target. Diagnoses NotChu (with the square witness) and
/// TypeMismatch; the induced map landing on fixed points and satisfying
/// the functor laws are engine invariants.
Checked<QFunctor> chu_apply_I(const QDistributor& phi, const QDistributor& psi,
                              const QFunctor& f, const QFunctor& g,
                              const IsbellCat& iphi, const IsbellCat& ipsi);

/// Comparison functors from the two feet into the fixed points:
///   f(x) = down(up(yoneda x))   (equivalently, the closure of E(-,x))
///   g(y) = down(co_yoneda y)    (equivalently, the column Phi(-,y))
/// Verified on construction: phi = cograph(g) o graph(f) entrywise, f is
/// dense (every fixed point is a weighted colimit of f), g is codense
/// (every fixed point is a weighted limit of g), and each comparison is
/// fully faithful exactly when the matching residual of phi by itself
/// collapses to the identity distributor of that foot.
struct IsbellWitnesses {
    IsbellCat ic;
    QFunctor f, g;
    bool f_fully_faithful = false;
    bool g_fully_faithful = false;
};
IsbellWitnesses isbell_witnesses(const QDistributor& phi, const Caps& caps = {});

/// Fully faithful functor a -> b that is surjective on iso classes, found
/// by exhaustive search over extent-preserving object maps.
std::optional<QFunctor> find_equivalence(QCatPtr a, QCatPtr b, const Caps& caps = {});

/// Cut completion of a poset: the fixed points of the identity transform
/// of p viewed as a category over the two-element quantale, returned as a
/// lattice whose elements are named by their down-sets. embed sends x to
/// its principal cut; the embedding preserves and reflects order and its
/// image is both join-dense and meet-dense (checked on construction).
struct MacNeilleResult {
    IsbellCat ic;
    FiniteLattice lattice;
    std::vector<int> embed;  // poset element -> lattice index
};
MacNeilleResult macneille_completion(const Poset& p, const Caps& caps = {});

/// Rebuild a finite lattice from the order between its join-irreducibles
/// and meet-irreducibles: dist is that order as a distributor over the
/// two-element quantale, and x -> (down-set of x among join-irreducibles)
/// is an order isomorphism onto the fixed points (checked on
/// construction, with to_fixed carrying the map).
struct LatticeRecon {
    QDistributor dist;
    IsbellCat ic;
    std::vector<int> to_fixed;  // lattice element -> point index
    std::vector<int> j_irr, m_irr;  // lattice indices of the two feet
};
LatticeRecon lattice_reconstruction(const FiniteLattice& l, const Caps& caps = {});

}  // namespace qk
