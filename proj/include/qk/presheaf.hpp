#pragma once

#include "qk/enriched.hpp"

namespace qk {

/// Contravariant presheaf on E of extent T: components comp[x]: |x| -> T
/// with comp[x] o E(x',x) <= comp[x'].
struct Presheaf {
    QCatPtr over;
    int extent = -1;
    std::vector<Val> comp;

    bool operator==(const Presheaf& o) const {
        return over.get() == o.over.get() && extent == o.extent && comp == o.comp;
    }
};

/// Covariant presheaf: components comp[x]: T -> |x| with
/// E(x,x') o comp[x] <= comp[x'].
struct CoPresheaf {
    QCatPtr over;
    int extent = -1;
    std::vector<Val> comp;

    bool operator==(const CoPresheaf& o) const {
        return over.get() == o.over.get() && extent == o.extent && comp == o.comp;
    }
};

Checked<Presheaf> validate_presheaf(QCatPtr over, int extent, std::vector<Val> comp);
Checked<CoPresheaf> validate_copresheaf(QCatPtr over, int extent, std::vector<Val> comp);

/// Componentwise order (same extent assumed).
bool presheaf_leq(const Presheaf& a, const Presheaf& b);
bool copresheaf_leq(const CoPresheaf& a, const CoPresheaf& b);

/// All presheaves of the given extent (every extent when -1), in
/// lexicographic component order. The product of per-object candidate
/// counts is capped by caps.max_presheaf_candidates.
std::vector<Presheaf> enumerate_presheaves(QCatPtr e, int extent = -1, const Caps& caps = {});
std::vector<CoPresheaf> enumerate_copresheaves(QCatPtr e, int extent = -1, const Caps& caps = {});

/// hom_PE(a,b) = meet over x of b_x <| a_x, an arrow T_a -> T_b.
Val hom_PE(const Presheaf& a, const Presheaf& b);
/// hom_coPE(a,b) = meet over x of b_x |> a_x, an arrow T_a -> T_b.
Val hom_coPE(const CoPresheaf& a, const CoPresheaf& b);

/// The category of all presheaves on E, objects in enumeration order.
struct PresheafCat {
    QCatPtr cat;
    std::vector<Presheaf> obs;
    int index_of(const Presheaf& p) const;
};
struct CoPresheafCat {
    QCatPtr cat;
    std::vector<CoPresheaf> obs;
    int index_of(const CoPresheaf& p) const;
};
PresheafCat build_PE(QCatPtr e, const Caps& caps = {});
/// Built as the dual of the presheaf category of the dual and verified
/// against the direct hom formula.
CoPresheafCat build_coPE(QCatPtr e, const Caps& caps = {});

/// Representables: yoneda(x) = E(-,x), co_yoneda(x) = E(x,-).
Presheaf yoneda(QCatPtr e, int x);
CoPresheaf co_yoneda(QCatPtr e, int x);
/// x -> index of E(-,x): a validated fully faithful functor E -> PE.
QFunctor yoneda_functor(QCatPtr e, const PresheafCat& pe);

/// The presheaf D(g(-), y) on the source of g, of extent |y|.
Presheaf graph_presheaf(const QFunctor& g, int y);
CoPresheaf cograph_copresheaf(const QFunctor& g, int y);

/// Objects representing some computed hom table, all mutually isomorphic;
/// the representative is the lowest object index.
struct ObjClass {
    std::vector<int> members;
    int rep() const { return members.front(); }
};

/// An object Y of extent T_phi with E(Y,z) = meet_x E(x,z) <| phi_x for
/// every z; absence is a value.
std::optional<ObjClass> supremum(const Presheaf& phi);
/// Dual: E(z,Y) = meet_x psi_x |> E(z,x).
std::optional<ObjClass> infimum(const CoPresheaf& psi);

/// Y with E(Y,z) = E(x,z) <| u for u: |x| -> t; checked against the
/// singleton weighted colimit. Cotensor dual for u: t -> |x|.
std::optional<ObjClass> tensor(QCatPtr e, int x, int t, Val u);
std::optional<ObjClass> cotensor(QCatPtr e, int x, int t, Val u);

/// Transports: pushforward is F_! with (F_! p)_y = join_x p_x o D(y, Fx);
/// pullback is F^* with (F^* p)_x = p_{Fx}; dist_transport is Phi^* with
/// (Phi^* p)_x = join_z p_z o Phi(x,z).
Presheaf pushforward(const QFunctor& f, const Presheaf& p);
Presheaf pullback(const QFunctor& f, const Presheaf& p);
CoPresheaf co_pushforward(const QFunctor& f, const CoPresheaf& p);
Presheaf dist_transport(const QDistributor& phi, const Presheaf& p);

/// Colimit of d weighted by w, computed as supremum(pushforward(d, w)) and
/// verified against the defining table E(-, z) = hom_P(w, E(d(-), z)).
std::optional<ObjClass> weighted_colimit(const QFunctor& d, const Presheaf& w);
std::optional<ObjClass> weighted_limit(const QFunctor& d, const CoPresheaf& w);

/// Multiplication of the presheaf monad on a sparse presheaf-of-presheaves:
/// result_x = join over (p, c) of c o p_x, an arrow |x| -> extent.
Presheaf monad_mult(QCatPtr e, const std::vector<std::pair<Presheaf, Val>>& sparse, int extent);

/// "extent=T x0=v0 x1=v1 ..." with named components, for witness output.
std::string render_presheaf(const Presheaf& p);
std::string render_copresheaf(const CoPresheaf& p);

}  // namespace qk
