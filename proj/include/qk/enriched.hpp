#pragma once

#include "qk/quantaloid.hpp"

namespace qk {

/// Category enriched in a quantaloid: each object carries an extent (a base
/// object of Q), homs are lattice elements, and the unit/composition laws
/// hold as inequalities.
struct QCategory {
    QuantaloidPtr Q;
    std::vector<std::string> objects;
    std::vector<int> extent;
    std::vector<std::vector<Val>> hom;  // hom[x][y] in Q(extent[x], extent[y])

    int size() const { return static_cast<int>(objects.size()); }
    int object_index(const std::string& name) const;
    Val h(int x, int y) const { return hom[x][y]; }
};

using QCatPtr = std::shared_ptr<const QCategory>;

/// Diagnoses UnitFailure (object) and CompositionFailure (triple).
Checked<QCatPtr> validate_qcategory(QuantaloidPtr Q, std::vector<std::string> objects,
                                    std::vector<int> extent, std::vector<std::vector<Val>> hom);

/// 1_extent <= hom(x,y) and hom(y,x): enriched isomorphy of objects.
bool objects_iso(const QCategory& e, int x, int y);

struct QFunctor {
    QCatPtr src, dst;
    std::vector<int> map;
};

/// Requires src and dst over the same quantaloid value (shared pointer).
/// Diagnoses DifferentBase, ExtentNotPreserved (object), HomInequality (pair).
Checked<QFunctor> validate_qfunctor(QCatPtr src, QCatPtr dst, std::vector<int> map);

/// Pointwise order: F <= G iff 1 <= dst(Fx, Gx) for every x.
bool functor_leq(const QFunctor& f, const QFunctor& g);
bool functor_iso(const QFunctor& f, const QFunctor& g);

struct QDistributor {
    QCatPtr src, dst;
    std::vector<std::vector<Val>> mat;  // mat[x][y] in Q(|x|_src, |y|_dst)
};

/// Diagnoses BimoduleFailure with the failing action side and objects.
Checked<QDistributor> validate_qdistributor(QCatPtr src, QCatPtr dst, std::vector<std::vector<Val>> mat);

QDistributor identity_distributor(QCatPtr e);
bool dist_leq(const QDistributor& a, const QDistributor& b);
bool dist_eq(const QDistributor& a, const QDistributor& b);

/// (psi o phi)(x,z) = join over y of psi(y,z) o phi(x,y).
QDistributor compose_dist(const QDistributor& psi, const QDistributor& phi);

/// Residuals in the quantaloid of distributors:
///   left:  (xi <| phi)(y,z) = meet_x left_residual(xi(x,z), phi(x,y))
///   right: (psi |> xi)(x,y) = meet_z right_residual(psi(y,z), xi(x,z))
/// so that psi o phi <= xi iff psi <= xi <| phi iff phi <= psi |> xi.
QDistributor dist_left_residual(const QDistributor& xi, const QDistributor& phi);
QDistributor dist_right_residual(const QDistributor& psi, const QDistributor& xi);

/// Graph F_(x,y) = D(Fx,y) : E -|-> D, cograph F^(y,x) = D(y,Fx) : D -|-> E.
QDistributor graph(const QFunctor& f);
QDistributor cograph(const QFunctor& f);

/// E^op over Q^op: same objects and extents, hom transposed.
QCatPtr dualize(QCatPtr e);
/// Same, reusing an already-built opposite quantaloid.
QCatPtr dualize_over(QCatPtr e, QuantaloidPtr q_op);
/// Both endpoint categories dualized over one shared opposite quantaloid.
QFunctor dualize_functor(const QFunctor& f);
QDistributor dualize_dist(const QDistributor& phi);

/// Objects of one extent under the underlying order x <= y iff 1 <= hom(x,y).
struct Fibre {
    int base_object = -1;
    std::vector<int> members;
    std::vector<std::vector<bool>> le;          // preorder on members
    std::vector<std::vector<int>> iso_classes;  // partition of member positions
    bool order_complete = false;
    std::string witness;  // a subset without a join, when not complete
};
Fibre fibre(const QCategory& e, int base_object, const Caps& caps = {});

/// The quantale viewed as a category over itself: objects are the lattice
/// elements, hom(u,v) = left_residual(v, u).
Checked<QCatPtr> quantale_self_category(QuantaloidPtr q);

/// All extent-preserving object maps src -> dst (odometer order), and the
/// subset of those that are functors.
std::vector<std::vector<int>> all_object_maps(const QCategory& src, const QCategory& dst,
                                              const Caps& caps = {});
std::vector<QFunctor> all_qfunctors(QCatPtr src, QCatPtr dst, const Caps& caps = {});

}  // namespace qk
