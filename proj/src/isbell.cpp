#include "qk/isbell.hpp"

#include <algorithm>
#include <string>
#include <utility>

namespace qk {

namespace {

QCatPtr unit_qcat(const QuantaloidPtr& q, int t) {
    QCategory c;
    c.Q = q;
    c.objects = {"*"};
    c.extent = {t};
    c.hom = {{q->id(t)}};
    return std::make_shared<const QCategory>(std::move(c));
}

// up(p) = phi residuated on the left by p viewed as a one-column distributor.
CoPresheaf up_raw(const QDistributor& phi, const Presheaf& p) {
    QDistributor pd{p.over, unit_qcat(p.over->Q, p.extent), {}};
    pd.mat.reserve(p.comp.size());
    for (Val v : p.comp) pd.mat.push_back({v});
    QDistributor r = dist_left_residual(phi, pd);
    std::vector<Val> comp(phi.dst->size());
    for (int y = 0; y < phi.dst->size(); ++y) comp[y] = r.mat[0][y];
    engine_check(validate_copresheaf(phi.dst, p.extent, comp).ok(),
                 "an up-transform image fails the copresheaf laws");
    return CoPresheaf{phi.dst, p.extent, std::move(comp)};
}

// down(s) = phi residuated on the right by s viewed as a one-row distributor.
Presheaf down_raw(const QDistributor& phi, const CoPresheaf& s) {
    QDistributor sd{unit_qcat(s.over->Q, s.extent), s.over, {s.comp}};
    QDistributor r = dist_right_residual(sd, phi);
    std::vector<Val> comp(phi.src->size());
    for (int x = 0; x < phi.src->size(); ++x) comp[x] = r.mat[x][0];
    engine_check(validate_presheaf(phi.src, s.extent, comp).ok(),
                 "a down-transform image fails the presheaf laws");
    return Presheaf{phi.src, s.extent, std::move(comp)};
}

bool class_contains(const std::optional<ObjClass>& c, int z) {
    return c && std::find(c->members.begin(), c->members.end(), z) != c->members.end();
}

QuantaloidPtr two_quantaloid() {
    static const QuantaloidPtr q = [] {
        FiniteLattice two = validate_lattice({"0", "1"}, {{0, 1}}).get();
        std::vector<std::vector<int>> tensor{{0, 0}, {0, 1}};
        return std::make_shared<const Quantaloid>(Quantaloid::from_quantale(two, tensor, 1).get());
    }();
    return q;
}

QCatPtr poset_as_qcat(const QuantaloidPtr& q, const Poset& p) {
    std::vector<std::vector<Val>> hom(p.size(), std::vector<Val>(p.size(), 0));
    for (int x = 0; x < p.size(); ++x)
        for (int y = 0; y < p.size(); ++y) hom[x][y] = p.le[x][y] ? 1 : 0;
    auto v = validate_qcategory(q, p.elems, std::vector<int>(p.size(), 0), std::move(hom));
    engine_check(v.ok(), "a poset fails the category laws over the two-element quantale");
    return v.get();
}

}  // namespace

Checked<CoPresheaf> isbell_up(const QDistributor& phi, const Presheaf& p) {
    Checked<CoPresheaf> out;
    if (p.over.get() != phi.src.get()) {
        out.diagnostics.push_back(
            {"TypeMismatch", "the presheaf does not live over the first foot"});
        return out;
    }
    out.value = up_raw(phi, p);
    return out;
}

Checked<Presheaf> isbell_down(const QDistributor& phi, const CoPresheaf& s) {
    Checked<Presheaf> out;
    if (s.over.get() != phi.dst.get()) {
        out.diagnostics.push_back(
            {"TypeMismatch", "the copresheaf does not live over the second foot"});
        return out;
    }
    out.value = down_raw(phi, s);
    return out;
}

IsbellLawReport verify_isbell_laws(const QDistributor& phi, const Caps& caps) {
    auto ps = enumerate_presheaves(phi.src, -1, caps);
    auto cs = enumerate_copresheaves(phi.dst, -1, caps);
    long long product = static_cast<long long>(ps.size()) * static_cast<long long>(cs.size());
    if (product > caps.max_presheaf_candidates) throw TooLargeError("transform law sweep", product);

    std::vector<CoPresheaf> ups;
    ups.reserve(ps.size());
    for (const auto& p : ps) ups.push_back(up_raw(phi, p));
    std::vector<Presheaf> downs;
    downs.reserve(cs.size());
    for (const auto& s : cs) downs.push_back(down_raw(phi, s));

    for (std::size_t i = 0; i < ps.size(); ++i)
        for (std::size_t j = 0; j < cs.size(); ++j)
            engine_check(hom_coPE(ups[i], cs[j]) == hom_PE(ps[i], downs[j]),
                         "the transform adjunction identity fails");

    for (std::size_t i = 0; i < ps.size(); ++i)
        for (std::size_t k = 0; k < ps.size(); ++k)
            if (ps[i].extent == ps[k].extent && presheaf_leq(ps[i], ps[k]))
                engine_check(copresheaf_leq(ups[k], ups[i]), "the up transform is not antitone");
    for (std::size_t j = 0; j < cs.size(); ++j)
        for (std::size_t k = 0; k < cs.size(); ++k)
            if (cs[j].extent == cs[k].extent && copresheaf_leq(cs[j], cs[k]))
                engine_check(presheaf_leq(downs[k], downs[j]), "the down transform is not antitone");

    for (std::size_t i = 0; i < ps.size(); ++i) {
        Presheaf c = down_raw(phi, ups[i]);
        engine_check(presheaf_leq(ps[i], c), "the closure is not inflationary");
        engine_check(up_raw(phi, c) == ups[i], "the transform of a closure differs from the transform");
        engine_check(down_raw(phi, up_raw(phi, c)) == c, "the closure is not idempotent");
    }
    for (std::size_t j = 0; j < cs.size(); ++j) {
        CoPresheaf k = up_raw(phi, downs[j]);
        engine_check(copresheaf_leq(cs[j], k), "the cotransform closure is not inflationary");
        engine_check(down_raw(phi, k) == downs[j],
                     "the transform of a coclosure differs from the transform");
    }

    return IsbellLawReport{ps.size(), cs.size(), product};
}

int IsbellCat::point_index(const Presheaf& p) const {
    for (std::size_t i = 0; i < points.size(); ++i)
        if (points[i] == p) return static_cast<int>(i);
    return -1;
}

IsbellCat isbell_category(const QDistributor& phi, const Caps& caps) {
    IsbellCat ic;
    ic.all = enumerate_presheaves(phi.src, -1, caps);

    std::vector<Presheaf> closures;
    closures.reserve(ic.all.size());
    for (const auto& p : ic.all) {
        CoPresheaf u = up_raw(phi, p);
        Presheaf c = down_raw(phi, u);
        engine_check(presheaf_leq(p, c), "the closure is not inflationary");
        engine_check(up_raw(phi, c) == u, "the transform of a closure differs from the transform");
        closures.push_back(std::move(c));
    }

    std::vector<int> fixed_at(ic.all.size(), -1);
    std::vector<std::string> names;
    std::vector<int> extents;
    for (std::size_t i = 0; i < ic.all.size(); ++i) {
        if (!(closures[i] == ic.all[i])) continue;
        fixed_at[i] = static_cast<int>(ic.points.size());
        ic.points.push_back(ic.all[i]);
        names.push_back("p" + std::to_string(i));
        extents.push_back(ic.all[i].extent);
    }

    ic.reflect.resize(ic.all.size(), -1);
    for (std::size_t i = 0; i < ic.all.size(); ++i) {
        int at = -1;
        for (std::size_t k = 0; k < ic.all.size(); ++k)
            if (ic.all[k] == closures[i]) {
                at = static_cast<int>(k);
                break;
            }
        engine_check(at >= 0, "a closure escapes the presheaf enumeration");
        engine_check(fixed_at[at] >= 0, "the closure is not idempotent");
        ic.reflect[i] = fixed_at[at];
    }

    const int n = static_cast<int>(ic.points.size());
    std::vector<std::vector<Val>> hom(n, std::vector<Val>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) hom[i][j] = hom_PE(ic.points[i], ic.points[j]);
    auto v = validate_qcategory(phi.src->Q, std::move(names), std::move(extents), std::move(hom));
    engine_check(v.ok(), "the fixed points fail the category laws");
    ic.cat = v.get();

    // The closure is left adjoint to the inclusion of the fixed points.
    for (std::size_t i = 0; i < ic.all.size(); ++i)
        for (int k = 0; k < n; ++k)
            engine_check(hom_PE(ic.all[i], ic.points[k]) == ic.cat->h(ic.reflect[i], k),
                         "the closure is not left adjoint to the inclusion");

    return ic;
}

Checked<FlagWitness> is_chu_transform(const QDistributor& phi, const QDistributor& psi,
                                      const QFunctor& f, const QFunctor& g) {
    Checked<FlagWitness> out;
    if (f.src.get() != phi.src.get())
        out.diagnostics.push_back({"TypeMismatch", "the first leg does not start at the source's first foot"});
    if (f.dst.get() != psi.src.get())
        out.diagnostics.push_back({"TypeMismatch", "the first leg does not land in the target's first foot"});
    if (g.src.get() != psi.dst.get())
        out.diagnostics.push_back({"TypeMismatch", "the second leg does not start at the target's second foot"});
    if (g.dst.get() != phi.dst.get())
        out.diagnostics.push_back({"TypeMismatch", "the second leg does not land in the source's second foot"});
    if (!out.diagnostics.empty()) return out;

    QDistributor via_target = compose_dist(psi, graph(f));
    QDistributor via_source = compose_dist(cograph(g), phi);
    QDistributor diag_target = dist_left_residual(psi, cograph(f));
    QDistributor diag_source = dist_right_residual(graph(g), phi);
    engine_check(dist_eq(via_target, diag_target),
                 "composing with a graph differs from residuating by the cograph");
    engine_check(dist_eq(via_source, diag_source),
                 "composing with a cograph differs from residuating by the graph");
    bool square = dist_eq(via_target, via_source);
    engine_check(square == dist_eq(diag_target, diag_source),
                 "the square and diagonal conditions disagree");

    FlagWitness w{square, ""};
    if (!square) {
        const auto& e = *phi.src;
        const auto& c = *psi.dst;
        for (int x = 0; x < e.size() && w.witness.empty(); ++x)
            for (int z = 0; z < c.size(); ++z)
                if (via_target.mat[x][z] != via_source.mat[x][z]) {
                    w.witness = "x=" + e.objects[x] + " y=" + c.objects[z] +
                                " via_target=" + e.Q->elem_name(e.extent[x], c.extent[z], via_target.mat[x][z]) +
                                " via_source=" + e.Q->elem_name(e.extent[x], c.extent[z], via_source.mat[x][z]);
                    break;
                }
    }
    out.value = std::move(w);
    return out;
}

Checked<QFunctor> chu_apply_I(const QDistributor& phi, const QDistributor& psi,
                              const QFunctor& f, const QFunctor& g,
                              const IsbellCat& iphi, const IsbellCat& ipsi) {
    Checked<QFunctor> out;
    auto cw = is_chu_transform(phi, psi, f, g);
    if (!cw.ok()) {
        out.diagnostics = cw.diagnostics;
        return out;
    }
    if (!cw.value->value) {
        out.diagnostics.push_back({"NotChu", cw.value->witness});
        return out;
    }
    if ((!iphi.all.empty() && iphi.all.front().over.get() != phi.src.get()) ||
        (!ipsi.all.empty() && ipsi.all.front().over.get() != psi.src.get())) {
        out.diagnostics.push_back(
            {"TypeMismatch", "the fixed-point categories do not belong to the feet"});
        return out;
    }

    std::vector<int> map(iphi.points.size());
    for (std::size_t i = 0; i < iphi.points.size(); ++i) {
        Presheaf t = down_raw(psi, up_raw(psi, pushforward(f, iphi.points[i])));
        int idx = ipsi.point_index(t);
        engine_check(idx >= 0, "a transported fixed point escapes the target fixed points");
        map[i] = idx;
    }
    auto v = validate_qfunctor(iphi.cat, ipsi.cat, std::move(map));
    engine_check(v.ok(), "the induced fixed-point map fails the functor laws");
    out.value = v.get();
    return out;
}

IsbellWitnesses isbell_witnesses(const QDistributor& phi, const Caps& caps) {
    IsbellWitnesses w;
    w.ic = isbell_category(phi, caps);
    const QCatPtr& e = phi.src;
    const QCatPtr& d = phi.dst;

    std::vector<int> fmap(e->size()), gmap(d->size());
    for (int x = 0; x < e->size(); ++x) {
        CoPresheaf row{d, e->extent[x], phi.mat[x]};
        engine_check(up_raw(phi, yoneda(e, x)) == row,
                     "the transform of a representable is not the distributor row");
        fmap[x] = w.ic.point_index(down_raw(phi, row));
        engine_check(fmap[x] >= 0, "the closure of a representable escapes the fixed points");
    }
    for (int y = 0; y < d->size(); ++y) {
        Presheaf col{e, d->extent[y], {}};
        col.comp.resize(e->size());
        for (int x = 0; x < e->size(); ++x) col.comp[x] = phi.mat[x][y];
        engine_check(down_raw(phi, co_yoneda(d, y)) == col,
                     "the transform of a representable is not the distributor column");
        gmap[y] = w.ic.point_index(col);
        engine_check(gmap[y] >= 0, "a distributor column escapes the fixed points");
    }

    auto fv = validate_qfunctor(e, w.ic.cat, fmap);
    engine_check(fv.ok(), "the first-foot comparison fails the functor laws");
    w.f = fv.get();
    auto gv = validate_qfunctor(d, w.ic.cat, gmap);
    engine_check(gv.ok(), "the second-foot comparison fails the functor laws");
    w.g = gv.get();

    engine_check(dist_eq(compose_dist(cograph(w.g), graph(w.f)), phi),
                 "the comparisons do not recover the distributor");

    const int n = static_cast<int>(w.ic.points.size());
    for (int z = 0; z < n; ++z) {
        bool found = class_contains(weighted_colimit(w.f, w.ic.points[z]), z);
        for (std::size_t i = 0; i < w.ic.all.size() && !found; ++i)
            found = class_contains(weighted_colimit(w.f, w.ic.all[i]), z);
        engine_check(found, "a fixed point is not a weighted colimit of the first-foot comparison");
    }
    auto cps = enumerate_copresheaves(d, -1, caps);
    for (int z = 0; z < n; ++z) {
        bool found = class_contains(weighted_limit(w.g, up_raw(phi, w.ic.points[z])), z);
        for (std::size_t j = 0; j < cps.size() && !found; ++j)
            found = class_contains(weighted_limit(w.g, cps[j]), z);
        engine_check(found, "a fixed point is not a weighted limit of the second-foot comparison");
    }

    bool crit_f = dist_eq(dist_right_residual(phi, phi), identity_distributor(e));
    bool act_f = true;
    for (int x = 0; x < e->size(); ++x)
        for (int y = 0; y < e->size(); ++y)
            act_f = act_f && w.ic.cat->h(fmap[x], fmap[y]) == e->h(x, y);
    engine_check(crit_f == act_f,
                 "full faithfulness of the first-foot comparison disagrees with the residual test");
    w.f_fully_faithful = act_f;

    bool crit_g = dist_eq(dist_left_residual(phi, phi), identity_distributor(d));
    bool act_g = true;
    for (int x = 0; x < d->size(); ++x)
        for (int y = 0; y < d->size(); ++y)
            act_g = act_g && w.ic.cat->h(gmap[x], gmap[y]) == d->h(x, y);
    engine_check(crit_g == act_g,
                 "full faithfulness of the second-foot comparison disagrees with the residual test");
    w.g_fully_faithful = act_g;

    return w;
}

std::optional<QFunctor> find_equivalence(QCatPtr a, QCatPtr b, const Caps& caps) {
    for (auto& m : all_object_maps(*a, *b, caps)) {
        auto v = validate_qfunctor(a, b, m);
        if (!v.ok()) continue;
        bool ff = true;
        for (int x = 0; x < a->size() && ff; ++x)
            for (int y = 0; y < a->size() && ff; ++y) ff = b->h(m[x], m[y]) == a->h(x, y);
        if (!ff) continue;
        bool surj = true;
        for (int z = 0; z < b->size() && surj; ++z) {
            bool hit = false;
            for (int x = 0; x < a->size() && !hit; ++x) hit = objects_iso(*b, m[x], z);
            surj = hit;
        }
        if (surj) return v.get();
    }
    return std::nullopt;
}

MacNeilleResult macneille_completion(const Poset& p, const Caps& caps) {
    MacNeilleResult out;
    QCatPtr e = poset_as_qcat(two_quantaloid(), p);
    out.ic = isbell_category(identity_distributor(e), caps);

    const int n = static_cast<int>(out.ic.points.size());
    std::vector<std::string> names(n);
    for (int i = 0; i < n; ++i) {
        std::string s = "{";
        for (int x = 0; x < p.size(); ++x)
            if (out.ic.points[i].comp[x] == 1) {
                if (s.size() > 1) s += " ";
                s += p.elems[x];
            }
        names[i] = s + "}";
    }
    std::vector<std::vector<bool>> le(n, std::vector<bool>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) le[i][j] = out.ic.cat->h(i, j) == 1;
    auto lp = validate_poset_table(names, le);
    engine_check(lp.ok(), "the cut order is not a poset");
    auto lat = validate_lattice(lp.get(), caps);
    engine_check(lat.ok(), "the cuts do not form a complete lattice");
    out.lattice = lat.get();

    out.embed.resize(p.size());
    for (int x = 0; x < p.size(); ++x) {
        out.embed[x] = out.ic.point_index(yoneda(e, x));
        engine_check(out.embed[x] >= 0, "a principal down-set is not a cut");
    }
    for (int x = 0; x < p.size(); ++x)
        for (int y = 0; y < p.size(); ++y)
            engine_check(p.le[x][y] == out.lattice.le[out.embed[x]][out.embed[y]],
                         "the principal-cut embedding distorts the order");

    for (int z = 0; z < n; ++z) {
        std::vector<int> below, above;
        for (int x = 0; x < p.size(); ++x) {
            if (out.lattice.le[out.embed[x]][z]) below.push_back(out.embed[x]);
            if (out.lattice.le[z][out.embed[x]]) above.push_back(out.embed[x]);
        }
        engine_check(out.lattice.join_all(below) == z,
                     "a cut is not the join of the principal cuts below it");
        engine_check(out.lattice.meet_all(above) == z,
                     "a cut is not the meet of the principal cuts above it");
    }
    return out;
}

LatticeRecon lattice_reconstruction(const FiniteLattice& l, const Caps& caps) {
    LatticeRecon out;
    out.j_irr = irreducibles(l, BoundKind::Join);
    out.m_irr = irreducibles(l, BoundKind::Meet);

    QuantaloidPtr q = two_quantaloid();
    auto sub_cat = [&](const std::vector<int>& xs) {
        std::vector<std::string> names;
        names.reserve(xs.size());
        for (int x : xs) names.push_back(l.elems[x]);
        std::vector<std::vector<Val>> hom(xs.size(), std::vector<Val>(xs.size(), 0));
        for (std::size_t i = 0; i < xs.size(); ++i)
            for (std::size_t j = 0; j < xs.size(); ++j) hom[i][j] = l.le[xs[i]][xs[j]] ? 1 : 0;
        auto v = validate_qcategory(q, std::move(names),
                                    std::vector<int>(xs.size(), 0), std::move(hom));
        engine_check(v.ok(), "an induced suborder fails the category laws");
        return v.get();
    };
    QCatPtr jc = sub_cat(out.j_irr);
    QCatPtr mc = sub_cat(out.m_irr);

    std::vector<std::vector<Val>> mat(out.j_irr.size(), std::vector<Val>(out.m_irr.size(), 0));
    for (std::size_t a = 0; a < out.j_irr.size(); ++a)
        for (std::size_t b = 0; b < out.m_irr.size(); ++b)
            mat[a][b] = l.le[out.j_irr[a]][out.m_irr[b]] ? 1 : 0;
    auto vd = validate_qdistributor(jc, mc, std::move(mat));
    engine_check(vd.ok(), "the order between irreducibles is not a bimodule");
    out.dist = vd.get();

    out.ic = isbell_category(out.dist, caps);
    engine_check(static_cast<int>(out.ic.points.size()) == l.size(),
                 "the fixed points do not match the lattice elements");

    out.to_fixed.resize(l.size());
    std::vector<bool> seen(out.ic.points.size(), false);
    for (int x = 0; x < l.size(); ++x) {
        std::vector<Val> comp(out.j_irr.size());
        for (std::size_t a = 0; a < out.j_irr.size(); ++a)
            comp[a] = l.le[out.j_irr[a]][x] ? 1 : 0;
        int idx = out.ic.point_index(Presheaf{jc, 0, std::move(comp)});
        engine_check(idx >= 0, "a principal irreducible down-set is not a fixed point");
        engine_check(!seen[idx], "two lattice elements share one irreducible down-set");
        seen[idx] = true;
        out.to_fixed[x] = idx;
    }
    for (int x = 0; x < l.size(); ++x)
        for (int y = 0; y < l.size(); ++y)
            engine_check(l.le[x][y] == (out.ic.cat->h(out.to_fixed[x], out.to_fixed[y]) == 1),
                         "the irreducible down-set map distorts the order");
    return out;
}

}  // namespace qk
