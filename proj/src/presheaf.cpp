#include "qk/presheaf.hpp"

#include <algorithm>
#include <type_traits>

namespace qk {

namespace {

// Pair condition of the presheaf inequality for components at x and y.
bool presheaf_pair_ok(const QCategory& e, int extent, int x, Val vx, int y, Val vy) {
    const auto& Q = *e.Q;
    return Q.leq(e.extent[y], extent, Q.compose(e.extent[y], e.extent[x], extent, vx, e.h(y, x)), vy);
}

bool copresheaf_pair_ok(const QCategory& e, int extent, int x, Val vx, int y, Val vy) {
    const auto& Q = *e.Q;
    return Q.leq(extent, e.extent[y], Q.compose(extent, e.extent[x], e.extent[y], e.h(x, y), vx), vy);
}

}  // namespace

Checked<Presheaf> validate_presheaf(QCatPtr over, int extent, std::vector<Val> comp) {
    Checked<Presheaf> res;
    if (extent < 0 || extent >= over->Q->object_count() ||
        static_cast<int>(comp.size()) != over->size()) {
        res.diagnostics.push_back({"BadIndex", "extent or component list out of shape"});
        return res;
    }
    for (int x = 0; x < over->size(); ++x)
        for (int y = 0; y < over->size(); ++y)
            if (!presheaf_pair_ok(*over, extent, x, comp[x], y, comp[y])) {
                res.diagnostics.push_back(
                    {"PresheafFailure", over->objects[x] + " " + over->objects[y]});
                if (res.diagnostics.size() >= 8) return res;
            }
    if (!res.diagnostics.empty()) return res;
    res.value = Presheaf{std::move(over), extent, std::move(comp)};
    return res;
}

Checked<CoPresheaf> validate_copresheaf(QCatPtr over, int extent, std::vector<Val> comp) {
    Checked<CoPresheaf> res;
    if (extent < 0 || extent >= over->Q->object_count() ||
        static_cast<int>(comp.size()) != over->size()) {
        res.diagnostics.push_back({"BadIndex", "extent or component list out of shape"});
        return res;
    }
    for (int x = 0; x < over->size(); ++x)
        for (int y = 0; y < over->size(); ++y)
            if (!copresheaf_pair_ok(*over, extent, x, comp[x], y, comp[y])) {
                res.diagnostics.push_back(
                    {"CoPresheafFailure", over->objects[x] + " " + over->objects[y]});
                if (res.diagnostics.size() >= 8) return res;
            }
    if (!res.diagnostics.empty()) return res;
    res.value = CoPresheaf{std::move(over), extent, std::move(comp)};
    return res;
}

bool presheaf_leq(const Presheaf& a, const Presheaf& b) {
    const auto& e = *a.over;
    for (int x = 0; x < e.size(); ++x)
        if (!e.Q->leq(e.extent[x], a.extent, a.comp[x], b.comp[x])) return false;
    return true;
}

bool copresheaf_leq(const CoPresheaf& a, const CoPresheaf& b) {
    const auto& e = *a.over;
    for (int x = 0; x < e.size(); ++x)
        if (!e.Q->leq(a.extent, e.extent[x], a.comp[x], b.comp[x])) return false;
    return true;
}

namespace {

template <typename PairOk>
std::vector<std::vector<Val>> enumerate_families(const QCategory& e, const std::vector<Val>& sizes,
                                                 PairOk pair_ok, long long budget) {
    const int n = e.size();
    long long product = 1;
    for (int x = 0; x < n; ++x) {
        product *= static_cast<long long>(sizes[x]);
        if (product > budget) throw TooLargeError("presheaf enumeration", product);
    }
    std::vector<std::vector<Val>> out;
    std::vector<Val> comp(n, 0);
    // depth-first with pairwise pruning; emits in lexicographic order
    int x = 0;
    while (x >= 0) {
        if (x == n) {
            out.push_back(comp);
            --x;
            if (x >= 0) ++comp[x];
            continue;
        }
        const Val limit = sizes[x];
        bool ok = false;
        for (; comp[x] < limit; ++comp[x]) {
            ok = pair_ok(x, comp[x], x, comp[x]);
            for (int y = 0; y < x && ok; ++y)
                ok = pair_ok(x, comp[x], y, comp[y]) && pair_ok(y, comp[y], x, comp[x]);
            if (ok) break;
        }
        if (ok) {
            ++x;
            if (x < n) comp[x] = 0;
        } else {
            --x;
            if (x >= 0) ++comp[x];
        }
    }
    return out;
}

}  // namespace

std::vector<Presheaf> enumerate_presheaves(QCatPtr e, int extent, const Caps& caps) {
    std::vector<Presheaf> out;
    for (int t = 0; t < e->Q->object_count(); ++t) {
        if (extent >= 0 && t != extent) continue;
        auto pair_ok = [&](int x, Val vx, int y, Val vy) {
            return presheaf_pair_ok(*e, t, x, vx, y, vy);
        };
        std::vector<Val> sizes(e->size());
        for (int x = 0; x < e->size(); ++x)
            sizes[x] = static_cast<Val>(e->Q->hom_size(e->extent[x], t));
        for (auto& comp : enumerate_families(*e, sizes, pair_ok, caps.max_presheaf_candidates))
            out.push_back(Presheaf{e, t, std::move(comp)});
    }
    return out;
}

std::vector<CoPresheaf> enumerate_copresheaves(QCatPtr e, int extent, const Caps& caps) {
    std::vector<CoPresheaf> out;
    for (int t = 0; t < e->Q->object_count(); ++t) {
        if (extent >= 0 && t != extent) continue;
        auto pair_ok = [&](int x, Val vx, int y, Val vy) {
            return copresheaf_pair_ok(*e, t, x, vx, y, vy);
        };
        std::vector<Val> sizes(e->size());
        for (int x = 0; x < e->size(); ++x)
            sizes[x] = static_cast<Val>(e->Q->hom_size(t, e->extent[x]));
        for (auto& comp : enumerate_families(*e, sizes, pair_ok, caps.max_presheaf_candidates))
            out.push_back(CoPresheaf{e, t, std::move(comp)});
    }
    return out;
}

Val hom_PE(const Presheaf& a, const Presheaf& b) {
    engine_check(a.over.get() == b.over.get(), "presheaf hom across categories");
    const auto& e = *a.over;
    const auto& Q = *e.Q;
    Val acc = Q.top(a.extent, b.extent);
    for (int x = 0; x < e.size(); ++x)
        acc = Q.meet(a.extent, b.extent, acc,
                     Q.left_residual(e.extent[x], a.extent, b.extent, b.comp[x], a.comp[x]));
    return acc;
}

Val hom_coPE(const CoPresheaf& a, const CoPresheaf& b) {
    engine_check(a.over.get() == b.over.get(), "copresheaf hom across categories");
    const auto& e = *a.over;
    const auto& Q = *e.Q;
    Val acc = Q.top(a.extent, b.extent);
    for (int x = 0; x < e.size(); ++x)
        acc = Q.meet(a.extent, b.extent, acc,
                     Q.right_residual(a.extent, b.extent, e.extent[x], b.comp[x], a.comp[x]));
    return acc;
}

int PresheafCat::index_of(const Presheaf& p) const {
    for (int i = 0; i < static_cast<int>(obs.size()); ++i)
        if (obs[i].extent == p.extent && obs[i].comp == p.comp) return i;
    return -1;
}

int CoPresheafCat::index_of(const CoPresheaf& p) const {
    for (int i = 0; i < static_cast<int>(obs.size()); ++i)
        if (obs[i].extent == p.extent && obs[i].comp == p.comp) return i;
    return -1;
}

PresheafCat build_PE(QCatPtr e, const Caps& caps) {
    PresheafCat pc;
    pc.obs = enumerate_presheaves(e, -1, caps);
    const int n = static_cast<int>(pc.obs.size());
    std::vector<std::string> names;
    std::vector<int> extent;
    for (int i = 0; i < n; ++i) {
        names.push_back("p" + std::to_string(i));
        extent.push_back(pc.obs[i].extent);
    }
    std::vector<std::vector<Val>> hom(n, std::vector<Val>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) hom[i][j] = hom_PE(pc.obs[i], pc.obs[j]);
    auto cat = validate_qcategory(e->Q, std::move(names), std::move(extent), std::move(hom));
    engine_check(cat.ok(), "presheaf category fails the category laws");
    pc.cat = *cat.value;
    return pc;
}

CoPresheafCat build_coPE(QCatPtr e, const Caps& caps) {
    // build P(E^op) over Q^op, then read it backwards
    auto e_op = dualize(e);
    auto p_op = build_PE(e_op, caps);
    CoPresheafCat cc;
    const int n = static_cast<int>(p_op.obs.size());
    for (int i = 0; i < n; ++i) cc.obs.push_back(CoPresheaf{e, p_op.obs[i].extent, p_op.obs[i].comp});
    std::vector<std::string> names;
    std::vector<int> extent;
    for (int i = 0; i < n; ++i) {
        names.push_back("q" + std::to_string(i));
        extent.push_back(cc.obs[i].extent);
    }
    std::vector<std::vector<Val>> hom(n, std::vector<Val>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            hom[i][j] = p_op.cat->h(j, i);
            engine_check(hom[i][j] == hom_coPE(cc.obs[i], cc.obs[j]),
                         "dual presheaf hom disagrees with the direct formula");
        }
    auto direct = enumerate_copresheaves(e, -1, caps);
    engine_check(direct.size() == cc.obs.size(), "dual and direct copresheaf counts differ");
    for (int i = 0; i < n; ++i) engine_check(direct[i] == cc.obs[i], "copresheaf order differs");
    auto cat = validate_qcategory(e->Q, std::move(names), std::move(extent), std::move(hom));
    engine_check(cat.ok(), "copresheaf category fails the category laws");
    cc.cat = *cat.value;
    return cc;
}

Presheaf yoneda(QCatPtr e, int x) {
    Presheaf p{e, e->extent[x], {}};
    for (int y = 0; y < e->size(); ++y) p.comp.push_back(e->h(y, x));
    return p;
}

CoPresheaf co_yoneda(QCatPtr e, int x) {
    CoPresheaf p{e, e->extent[x], {}};
    for (int y = 0; y < e->size(); ++y) p.comp.push_back(e->h(x, y));
    return p;
}

QFunctor yoneda_functor(QCatPtr e, const PresheafCat& pe) {
    std::vector<int> map;
    for (int x = 0; x < e->size(); ++x) {
        int i = pe.index_of(yoneda(e, x));
        engine_check(i >= 0, "representable presheaf missing from the enumeration");
        map.push_back(i);
    }
    auto f = validate_qfunctor(e, pe.cat, std::move(map));
    engine_check(f.ok(), "the representable embedding is not a functor");
    return *f.value;
}

Presheaf graph_presheaf(const QFunctor& g, int y) {
    Presheaf p{g.src, g.dst->extent[y], {}};
    for (int x = 0; x < g.src->size(); ++x) p.comp.push_back(g.dst->h(g.map[x], y));
    return p;
}

CoPresheaf cograph_copresheaf(const QFunctor& g, int y) {
    CoPresheaf p{g.src, g.dst->extent[y], {}};
    for (int x = 0; x < g.src->size(); ++x) p.comp.push_back(g.dst->h(y, g.map[x]));
    return p;
}

namespace {

// E(Y,z) table a supremum of phi must represent.
std::vector<Val> sup_table(const Presheaf& phi) {
    const auto& e = *phi.over;
    const auto& Q = *e.Q;
    std::vector<Val> table(e.size());
    for (int z = 0; z < e.size(); ++z) {
        Val acc = Q.top(phi.extent, e.extent[z]);
        for (int x = 0; x < e.size(); ++x)
            acc = Q.meet(phi.extent, e.extent[z], acc,
                         Q.left_residual(e.extent[x], phi.extent, e.extent[z], e.h(x, z),
                                         phi.comp[x]));
        table[z] = acc;
    }
    return table;
}

// E(z,Y) table for an infimum.
std::vector<Val> inf_table(const CoPresheaf& psi) {
    const auto& e = *psi.over;
    const auto& Q = *e.Q;
    std::vector<Val> table(e.size());
    for (int z = 0; z < e.size(); ++z) {
        Val acc = Q.top(e.extent[z], psi.extent);
        for (int x = 0; x < e.size(); ++x)
            acc = Q.meet(e.extent[z], psi.extent, acc,
                         Q.right_residual(e.extent[z], psi.extent, e.extent[x], psi.comp[x],
                                          e.h(z, x)));
        table[z] = acc;
    }
    return table;
}

std::optional<ObjClass> covariant_class(const QCategory& e, int extent,
                                        const std::vector<Val>& table) {
    ObjClass c;
    for (int y = 0; y < e.size(); ++y) {
        if (e.extent[y] != extent) continue;
        bool all = true;
        for (int z = 0; z < e.size() && all; ++z) all = e.h(y, z) == table[z];
        if (all) c.members.push_back(y);
    }
    if (c.members.empty()) return std::nullopt;
    return c;
}

std::optional<ObjClass> contravariant_class(const QCategory& e, int extent,
                                            const std::vector<Val>& table) {
    ObjClass c;
    for (int y = 0; y < e.size(); ++y) {
        if (e.extent[y] != extent) continue;
        bool all = true;
        for (int z = 0; z < e.size() && all; ++z) all = e.h(z, y) == table[z];
        if (all) c.members.push_back(y);
    }
    if (c.members.empty()) return std::nullopt;
    return c;
}

bool same_class(const std::optional<ObjClass>& a, const std::optional<ObjClass>& b) {
    if (!a || !b) return !a && !b;
    return a->members == b->members;
}

}  // namespace

std::optional<ObjClass> supremum(const Presheaf& phi) {
    return covariant_class(*phi.over, phi.extent, sup_table(phi));
}

std::optional<ObjClass> infimum(const CoPresheaf& psi) {
    return contravariant_class(*psi.over, psi.extent, inf_table(psi));
}

Presheaf pushforward(const QFunctor& f, const Presheaf& p) {
    const auto& Q = *f.src->Q;
    const auto& d = *f.dst;
    Presheaf out{f.dst, p.extent, std::vector<Val>(d.size())};
    for (int y = 0; y < d.size(); ++y) {
        Val acc = Q.bottom(d.extent[y], p.extent);
        for (int x = 0; x < f.src->size(); ++x)
            acc = Q.join(d.extent[y], p.extent, acc,
                         Q.compose(d.extent[y], f.src->extent[x], p.extent, p.comp[x],
                                   d.h(y, f.map[x])));
        out.comp[y] = acc;
    }
    engine_check(validate_presheaf(out.over, out.extent, out.comp).ok(),
                 "pushforward left the presheaf condition");
    return out;
}

Presheaf pullback(const QFunctor& f, const Presheaf& p) {
    Presheaf out{f.src, p.extent, {}};
    for (int x = 0; x < f.src->size(); ++x) out.comp.push_back(p.comp[f.map[x]]);
    engine_check(validate_presheaf(out.over, out.extent, out.comp).ok(),
                 "pullback left the presheaf condition");
    return out;
}

CoPresheaf co_pushforward(const QFunctor& f, const CoPresheaf& p) {
    const auto& Q = *f.src->Q;
    const auto& d = *f.dst;
    CoPresheaf out{f.dst, p.extent, std::vector<Val>(d.size())};
    for (int y = 0; y < d.size(); ++y) {
        Val acc = Q.bottom(p.extent, d.extent[y]);
        for (int x = 0; x < f.src->size(); ++x)
            acc = Q.join(p.extent, d.extent[y], acc,
                         Q.compose(p.extent, f.src->extent[x], d.extent[y], d.h(f.map[x], y),
                                   p.comp[x]));
        out.comp[y] = acc;
    }
    engine_check(validate_copresheaf(out.over, out.extent, out.comp).ok(),
                 "copresheaf pushforward left the covariant condition");
    return out;
}

Presheaf dist_transport(const QDistributor& phi, const Presheaf& p) {
    const auto& Q = *phi.src->Q;
    const auto& e = *phi.src;
    Presheaf out{phi.src, p.extent, std::vector<Val>(e.size())};
    for (int x = 0; x < e.size(); ++x) {
        Val acc = Q.bottom(e.extent[x], p.extent);
        for (int z = 0; z < phi.dst->size(); ++z)
            acc = Q.join(e.extent[x], p.extent, acc,
                         Q.compose(e.extent[x], phi.dst->extent[z], p.extent, p.comp[z],
                                   phi.mat[x][z]));
        out.comp[x] = acc;
    }
    engine_check(validate_presheaf(out.over, out.extent, out.comp).ok(),
                 "distributor transport left the presheaf condition");
    return out;
}

std::optional<ObjClass> weighted_colimit(const QFunctor& d, const Presheaf& w) {
    const auto& e = *d.dst;
    auto via_sup = sup_table(pushforward(d, w));
    // defining table: E(colim, z) = hom_P(w, E(d(-), z))
    for (int z = 0; z < e.size(); ++z) {
        Presheaf dz = graph_presheaf(d, z);
        engine_check(via_sup[z] == hom_PE(w, dz),
                     "weighted colimit tables disagree between definitions");
    }
    return covariant_class(e, w.extent, via_sup);
}

std::optional<ObjClass> weighted_limit(const QFunctor& d, const CoPresheaf& w) {
    const auto& e = *d.dst;
    auto via_inf = inf_table(co_pushforward(d, w));
    // defining table: E(z, lim) = hom_coP(E(z, d(-)), w)
    for (int z = 0; z < e.size(); ++z) {
        CoPresheaf dz = cograph_copresheaf(d, z);
        engine_check(via_inf[z] == hom_coPE(dz, w),
                     "weighted limit tables disagree between definitions");
    }
    return contravariant_class(e, w.extent, via_inf);
}

std::optional<ObjClass> tensor(QCatPtr e, int x, int t, Val u) {
    const auto& Q = *e->Q;
    std::vector<Val> table(e->size());
    for (int z = 0; z < e->size(); ++z)
        table[z] = Q.left_residual(e->extent[x], t, e->extent[z], e->h(x, z), u);
    auto direct = covariant_class(*e, t, table);

    // the same thing as the colimit of the one-object diagram at x weighted
    // by the single component u
    QCategory j{e->Q, {"j"}, {e->extent[x]}, {{Q.id(e->extent[x])}}};
    auto jp = std::make_shared<const QCategory>(std::move(j));
    auto dj = validate_qfunctor(jp, e, {x});
    engine_check(dj.ok(), "one-object probe diagram rejected");
    auto via_colim = weighted_colimit(*dj.value, Presheaf{jp, t, {u}});
    engine_check(same_class(direct, via_colim), "tensor disagrees with the singleton colimit");
    return direct;
}

std::optional<ObjClass> cotensor(QCatPtr e, int x, int t, Val u) {
    const auto& Q = *e->Q;
    std::vector<Val> table(e->size());
    for (int z = 0; z < e->size(); ++z)
        table[z] = Q.right_residual(e->extent[z], t, e->extent[x], u, e->h(z, x));
    auto direct = contravariant_class(*e, t, table);

    QCategory j{e->Q, {"j"}, {e->extent[x]}, {{Q.id(e->extent[x])}}};
    auto jp = std::make_shared<const QCategory>(std::move(j));
    auto dj = validate_qfunctor(jp, e, {x});
    engine_check(dj.ok(), "one-object probe diagram rejected");
    auto via_limit = weighted_limit(*dj.value, CoPresheaf{jp, t, {u}});
    engine_check(same_class(direct, via_limit), "cotensor disagrees with the singleton limit");
    return direct;
}

Presheaf monad_mult(QCatPtr e, const std::vector<std::pair<Presheaf, Val>>& sparse, int extent) {
    const auto& Q = *e->Q;
    Presheaf out{e, extent, std::vector<Val>(e->size())};
    for (int x = 0; x < e->size(); ++x) {
        Val acc = Q.bottom(e->extent[x], extent);
        for (const auto& [p, c] : sparse)
            acc = Q.join(e->extent[x], extent, acc,
                         Q.compose(e->extent[x], p.extent, extent, c, p.comp[x]));
        out.comp[x] = acc;
    }
    engine_check(validate_presheaf(out.over, out.extent, out.comp).ok(),
                 "monad multiplication left the presheaf condition");
    return out;
}

namespace {

template <typename P>
std::string render_components(const char* tag, const P& p) {
    const auto& e = *p.over;
    std::string s = std::string(tag) + "=" + e.Q->object_name(p.extent);
    for (int x = 0; x < e.size(); ++x) {
        int cs = std::is_same_v<P, Presheaf> ? e.extent[x] : p.extent;
        int ct = std::is_same_v<P, Presheaf> ? p.extent : e.extent[x];
        s += " " + e.objects[x] + "=" + e.Q->elem_name(cs, ct, p.comp[x]);
    }
    return s;
}

}  // namespace

std::string render_presheaf(const Presheaf& p) { return render_components("extent", p); }
std::string render_copresheaf(const CoPresheaf& p) { return render_components("extent", p); }

}  // namespace qk
