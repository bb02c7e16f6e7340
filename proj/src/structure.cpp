#include "qk/structure.hpp"

#include <algorithm>
#include <chrono>

namespace qk {

namespace {

std::vector<int> fibre_members(const QCategory& e, int t) {
    std::vector<int> m;
    for (int x = 0; x < e.size(); ++x)
        if (e.extent[x] == t) m.push_back(x);
    return m;
}

std::string object_set(const QCategory& e, const std::vector<int>& xs) {
    std::string s = "{";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) s += ' ';
        s += e.objects[xs[i]];
    }
    return s + "}";
}

bool fibre_leq(const QCategory& e, int t, int x, int y) {
    return e.Q->leq(t, t, e.Q->id(t), e.h(x, y));
}

/// Least upper bound of subset among the fibre members at t, -1 when absent.
int fibre_join(const QCategory& e, int t, const std::vector<int>& members,
               const std::vector<int>& subset) {
    auto upper = [&](int z) {
        return std::all_of(subset.begin(), subset.end(),
                           [&](int s) { return fibre_leq(e, t, s, z); });
    };
    for (int c : members) {
        if (!upper(c)) continue;
        bool least = true;
        for (int z : members)
            if (upper(z) && !fibre_leq(e, t, c, z)) {
                least = false;
                break;
            }
        if (least) return c;
    }
    return -1;
}

void check_fibre_cap(const std::vector<int>& members, const Caps& caps, const char* what) {
    if (static_cast<int>(members.size()) > caps.max_fibre_subset)
        throw TooLargeError(what, 1LL << members.size());
}

}  // namespace

FlagWitness is_total(QCatPtr e, const Caps& caps) {
    for (const auto& p : enumerate_presheaves(e, -1, caps))
        if (!supremum(p)) return {false, render_presheaf(p)};
    return {true, {}};
}

FlagWitness is_cototal(QCatPtr e, const Caps& caps) {
    for (const auto& p : enumerate_copresheaves(e, -1, caps))
        if (!infimum(p)) return {false, render_copresheaf(p)};
    return {true, {}};
}

FlagWitness is_tensored(QCatPtr e, const Caps& caps) {
    (void)caps;
    const auto& q = *e->Q;
    for (int x = 0; x < e->size(); ++x)
        for (int t = 0; t < q.object_count(); ++t)
            for (Val u = 0; u < static_cast<Val>(q.hom_size(e->extent[x], t)); ++u)
                if (!tensor(e, x, t, u))
                    return {false, "x=" + e->objects[x] + " t=" + q.object_name(t) +
                                       " u=" + q.elem_name(e->extent[x], t, u)};
    return {true, {}};
}

FlagWitness is_cotensored(QCatPtr e, const Caps& caps) {
    (void)caps;
    const auto& q = *e->Q;
    for (int x = 0; x < e->size(); ++x)
        for (int t = 0; t < q.object_count(); ++t)
            for (Val u = 0; u < static_cast<Val>(q.hom_size(t, e->extent[x])); ++u)
                if (!cotensor(e, x, t, u))
                    return {false, "x=" + e->objects[x] + " t=" + q.object_name(t) +
                                       " u=" + q.elem_name(t, e->extent[x], u)};
    return {true, {}};
}

FlagWitness is_conically_cocomplete(QCatPtr e, const Caps& caps) {
    const auto& q = *e->Q;
    for (int t = 0; t < q.object_count(); ++t) {
        auto members = fibre_members(*e, t);
        check_fibre_cap(members, caps, "conical families");
        for (std::uint32_t mask = 0; mask < (1u << members.size()); ++mask) {
            std::vector<int> fam;
            for (std::size_t i = 0; i < members.size(); ++i)
                if (mask & (1u << i)) fam.push_back(members[i]);
            Presheaf w{e, t, std::vector<Val>(e->size())};
            for (int x = 0; x < e->size(); ++x) {
                Val acc = q.bottom(e->extent[x], t);
                for (int y : fam) acc = q.join(e->extent[x], t, acc, e->h(x, y));
                w.comp[x] = acc;
            }
            engine_check(validate_presheaf(w.over, w.extent, w.comp).ok(),
                         "a join of representables is not a presheaf");
            if (!supremum(w))
                return {false, "t=" + q.object_name(t) + " family=" + object_set(*e, fam)};
        }
    }
    return {true, {}};
}

FlagWitness is_conically_complete(QCatPtr e, const Caps& caps) {
    const auto& q = *e->Q;
    for (int t = 0; t < q.object_count(); ++t) {
        auto members = fibre_members(*e, t);
        check_fibre_cap(members, caps, "conical families");
        for (std::uint32_t mask = 0; mask < (1u << members.size()); ++mask) {
            std::vector<int> fam;
            for (std::size_t i = 0; i < members.size(); ++i)
                if (mask & (1u << i)) fam.push_back(members[i]);
            CoPresheaf w{e, t, std::vector<Val>(e->size())};
            for (int x = 0; x < e->size(); ++x) {
                Val acc = q.bottom(t, e->extent[x]);
                for (int y : fam) acc = q.join(t, e->extent[x], acc, e->h(y, x));
                w.comp[x] = acc;
            }
            engine_check(validate_copresheaf(w.over, w.extent, w.comp).ok(),
                         "a join of corepresentables is not a copresheaf");
            if (!infimum(w))
                return {false, "t=" + q.object_name(t) + " family=" + object_set(*e, fam)};
        }
    }
    return {true, {}};
}

FlagWitness is_order_complete(QCatPtr e, const Caps& caps) {
    const auto& q = *e->Q;
    for (int t = 0; t < q.object_count(); ++t) {
        Fibre f = fibre(*e, t, caps);
        if (!f.order_complete)
            return {false, "t=" + q.object_name(t) + " subset=" + f.witness};
    }
    return {true, {}};
}

StructureReport structure_report(QCatPtr e, const Caps& caps) {
    auto t0 = std::chrono::steady_clock::now();
    StructureReport r;
    r.total = is_total(e, caps);
    r.cototal = is_cototal(e, caps);
    r.tensored = is_tensored(e, caps);
    r.cotensored = is_cotensored(e, caps);
    r.conically_cocomplete = is_conically_cocomplete(e, caps);
    r.conically_complete = is_conically_complete(e, caps);
    r.order_complete = is_order_complete(e, caps);
    r.presheaf_count = enumerate_presheaves(e, -1, caps).size();
    r.copresheaf_count = enumerate_copresheaves(e, -1, caps).size();
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

namespace {

/// Condition 0: for each presheaf, an object representing maps out of it.
bool yoneda_left_adjoint_exists(QCatPtr e, const Caps& caps) {
    const auto& q = *e->Q;
    auto ps = enumerate_presheaves(e, -1, caps);
    const int n = e->size();
    std::vector<Presheaf> reps;
    reps.reserve(n);
    for (int x = 0; x < n; ++x) reps.push_back(yoneda(e, x));
    std::vector<int> adj(ps.size(), -1);
    for (std::size_t i = 0; i < ps.size(); ++i) {
        for (int cand = 0; cand < n && adj[i] < 0; ++cand) {
            if (e->extent[cand] != ps[i].extent) continue;
            bool ok = true;
            for (int z = 0; z < n && ok; ++z)
                ok = e->h(cand, z) == hom_PE(ps[i], reps[z]);
            if (ok) adj[i] = cand;
        }
        if (adj[i] < 0) return false;
    }
    // pointwise representing objects assemble into a functor on presheaves
    for (std::size_t i = 0; i < ps.size(); ++i)
        for (std::size_t j = 0; j < ps.size(); ++j)
            engine_check(q.leq(ps[i].extent, ps[j].extent, hom_PE(ps[i], ps[j]),
                               e->h(adj[i], adj[j])),
                         "left adjoint of the Yoneda embedding breaks the hom inequality");
    return true;
}

struct FullSub {
    QCatPtr cat;
    QFunctor inclusion;
};

FullSub full_subcategory(QCatPtr e, const std::vector<int>& obs) {
    std::vector<std::string> names;
    std::vector<int> ext;
    std::vector<std::vector<Val>> hom(obs.size(), std::vector<Val>(obs.size()));
    for (std::size_t a = 0; a < obs.size(); ++a) {
        names.push_back(e->objects[obs[a]]);
        ext.push_back(e->extent[obs[a]]);
        for (std::size_t b = 0; b < obs.size(); ++b) hom[a][b] = e->h(obs[a], obs[b]);
    }
    auto jv = validate_qcategory(e->Q, std::move(names), std::move(ext), std::move(hom));
    engine_check(jv.ok(), "a full subcategory fails the category laws");
    auto iv = validate_qfunctor(jv.get(), e, obs);
    engine_check(iv.ok(), "a full inclusion fails the functor laws");
    return {jv.get(), iv.get()};
}

/// Conditions 1 and 5: every weight over every full-subcategory inclusion
/// has a colimit (limit).
bool inclusion_colimits_exist(QCatPtr e, const Caps& caps, bool limits) {
    const int n = e->size();
    if (n > 16) throw TooLargeError("full subcategory diagrams", 1LL << n);
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        std::vector<int> obs;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) obs.push_back(i);
        FullSub sub = full_subcategory(e, obs);
        if (limits) {
            for (const auto& w : enumerate_copresheaves(sub.cat, -1, caps))
                if (!weighted_limit(sub.inclusion, w)) return false;
        } else {
            for (const auto& w : enumerate_presheaves(sub.cat, -1, caps))
                if (!weighted_colimit(sub.inclusion, w)) return false;
        }
    }
    return true;
}

}  // namespace

EquivalenceReport verify_totality_equivalences(QCatPtr e, const Caps& caps) {
    EquivalenceReport r;
    QCatPtr d = dualize(e);
    r.conditions[0] = yoneda_left_adjoint_exists(e, caps);
    r.conditions[1] = inclusion_colimits_exist(e, caps, false);
    r.conditions[2] = is_total(e, caps).value;
    r.conditions[3] = is_tensored(e, caps).value && is_conically_cocomplete(e, caps).value;
    r.conditions[4] = yoneda_left_adjoint_exists(d, caps);
    r.conditions[5] = inclusion_colimits_exist(e, caps, true);
    r.conditions[6] = is_cototal(e, caps).value;
    r.conditions[7] = is_cotensored(e, caps).value && is_conically_complete(e, caps).value;
    for (int i = 1; i < 8; ++i)
        engine_check(r.conditions[i] == r.conditions[0], "totality characterizations disagree");
    // the direct deciders must match their duals computed the other way round
    engine_check(is_total(d, caps).value == r.conditions[6],
                 "dual suprema disagree with infima");
    engine_check(is_tensored(d, caps).value == is_cotensored(e, caps).value,
                 "dual tensors disagree with cotensors");
    engine_check(is_conically_cocomplete(d, caps).value == is_conically_complete(e, caps).value,
                 "dual conical joins disagree with conical meets");
    r.value = r.conditions[0];
    return r;
}

AdjointSearch has_right_adjoint(const QFunctor& f, const Caps& caps) {
    AdjointSearch out;
    QCatPtr e = f.src, d = f.dst;
    const auto& q = *e->Q;

    FlagWitness tens = is_tensored(e, caps);
    FlagWitness oc = is_order_complete(e, caps);
    out.preconditions_ok = tens.value && oc.value;
    if (!out.preconditions_ok)
        out.diagnostics.push_back(
            {"PreconditionFailed", !tens.value ? "source not tensored at " + tens.witness
                                               : "source fibre incomplete at " + oc.witness});

    std::optional<std::vector<int>> brute;
    for (const auto& m : all_object_maps(*d, *e, caps)) {
        bool ok = true;
        for (int x = 0; x < e->size() && ok; ++x)
            for (int y = 0; y < d->size() && ok; ++y)
                ok = e->h(x, m[y]) == d->h(f.map[x], y);
        if (ok) {
            brute = m;
            break;
        }
    }
    out.exists = brute.has_value();
    if (brute) {
        auto gv = validate_qfunctor(d, e, *brute);
        engine_check(gv.ok(), "an adjoint object map fails the functor laws");
        out.right = gv.get();
    }
    if (!out.preconditions_ok) return out;

    bool criterion = true;

    for (int x = 0; x < e->size() && criterion; ++x)
        for (int t = 0; t < q.object_count() && criterion; ++t)
            for (Val u = 0; u < static_cast<Val>(q.hom_size(e->extent[x], t)) && criterion;
                 ++u) {
                auto tx = tensor(e, x, t, u);
                engine_check(tx.has_value(), "tensor missing in a tensored category");
                int r = tx->rep();
                for (int z = 0; z < d->size(); ++z) {
                    Val want =
                        q.left_residual(e->extent[x], t, d->extent[z], d->h(f.map[x], z), u);
                    if (d->h(f.map[r], z) != want) {
                        criterion = false;
                        out.diagnostics.push_back(
                            {"TensorNotPreserved",
                             "x=" + e->objects[x] + " t=" + q.object_name(t) +
                                 " u=" + q.elem_name(e->extent[x], t, u)});
                        break;
                    }
                }
            }

    for (int t = 0; t < q.object_count() && criterion; ++t) {
        auto members = fibre_members(*e, t);
        check_fibre_cap(members, caps, "fibre join preservation");
        auto dmem = fibre_members(*d, t);
        for (std::uint32_t mask = 0; mask < (1u << members.size()) && criterion; ++mask) {
            std::vector<int> sub;
            for (std::size_t i = 0; i < members.size(); ++i)
                if (mask & (1u << i)) sub.push_back(members[i]);
            int j = fibre_join(*e, t, members, sub);
            engine_check(j >= 0, "fibre join missing in an order-complete category");
            for (int z : dmem) {
                bool join_below = fibre_leq(*d, t, f.map[j], z);
                bool all_below = std::all_of(sub.begin(), sub.end(), [&](int s) {
                    return fibre_leq(*d, t, f.map[s], z);
                });
                if (join_below != all_below) {
                    criterion = false;
                    out.diagnostics.push_back(
                        {"JoinNotPreserved", "t=" + q.object_name(t) +
                                                 " family=" + object_set(*e, sub) +
                                                 " join=" + e->objects[j]});
                    break;
                }
            }
        }
    }

    engine_check(criterion == out.exists, "adjoint criterion disagrees with the search");

    if (criterion) {
        // fibre-wise construction: gy = join of every x with fx <= y
        std::vector<int> gmap(d->size(), -1);
        for (int y = 0; y < d->size(); ++y) {
            int t = d->extent[y];
            auto members = fibre_members(*e, t);
            std::vector<int> below;
            for (int x : members)
                if (fibre_leq(*d, t, f.map[x], y)) below.push_back(x);
            gmap[y] = fibre_join(*e, t, members, below);
            engine_check(gmap[y] >= 0, "fibre-wise adjoint join missing");
        }
        for (int x = 0; x < e->size(); ++x)
            for (int y = 0; y < d->size(); ++y)
                engine_check(e->h(x, gmap[y]) == d->h(f.map[x], y),
                             "fibre-wise adjoint misses the adjunction equality");
        for (int y = 0; y < d->size(); ++y)
            engine_check(objects_iso(*e, gmap[y], (*brute)[y]),
                         "fibre-wise adjoint differs from the searched one");
        auto gv = validate_qfunctor(d, e, gmap);
        engine_check(gv.ok(), "fibre-wise adjoint fails the functor laws");
        out.right = gv.get();
    }
    return out;
}

Checked<QFunctor> injective_extension(const QFunctor& f, const QFunctor& g, const Caps& caps) {
    Checked<QFunctor> out;
    if (f.src.get() != g.src.get()) {
        out.diagnostics.push_back({"DifferentBase", "extension legs have different domains"});
        return out;
    }
    QCatPtr c = f.src, e = f.dst, d = g.dst;
    FlagWitness tot = is_total(e, caps);
    if (!tot.value) {
        out.diagnostics.push_back({"NotTotal", tot.witness});
        return out;
    }
    for (int x = 0; x < c->size(); ++x)
        for (int y = 0; y < c->size(); ++y)
            if (c->h(x, y) != d->h(g.map[x], g.map[y])) {
                out.diagnostics.push_back(
                    {"NotFullyFaithful", c->objects[x] + " " + c->objects[y]});
                return out;
            }

    std::vector<int> hmap(d->size(), -1);
    for (int y = 0; y < d->size(); ++y) {
        auto s = supremum(pushforward(f, graph_presheaf(g, y)));
        engine_check(s.has_value(), "extension supremum missing in a total category");
        hmap[y] = s->rep();
    }
    auto hv = validate_qfunctor(d, e, hmap);
    engine_check(hv.ok(), "extension fails the functor laws");
    QFunctor h = hv.get();
    for (int x = 0; x < c->size(); ++x)
        engine_check(objects_iso(*e, h.map[g.map[x]], f.map[x]),
                     "extension does not restrict to the extended functor");
    out.value = std::move(h);
    return out;
}

std::optional<QFunctor> yoneda_extension(QCatPtr e, const Presheaf& phi, const Caps& caps) {
    const int n = e->size();
    std::vector<Presheaf> obs;
    obs.reserve(n + 1);
    for (int x = 0; x < n; ++x) obs.push_back(yoneda(e, x));
    obs.push_back(phi);

    std::vector<std::string> names;
    std::vector<int> ext;
    for (int i = 0; i <= n; ++i) {
        names.push_back(i < n ? "r_" + e->objects[i] : std::string("w"));
        ext.push_back(obs[i].extent);
    }
    std::vector<std::vector<Val>> hom(n + 1, std::vector<Val>(n + 1));
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) hom[i][j] = hom_PE(obs[i], obs[j]);
    auto dv = validate_qcategory(e->Q, std::move(names), std::move(ext), std::move(hom));
    engine_check(dv.ok(), "the presheaf subcategory fails the category laws");
    QCatPtr d = dv.get();

    std::vector<int> gmap(n);
    for (int x = 0; x < n; ++x) gmap[x] = x;
    engine_check(validate_qfunctor(e, d, gmap).ok(),
                 "the Yoneda corestriction fails the functor laws");

    std::optional<QFunctor> found;
    for (const auto& m : all_object_maps(*d, *e, caps)) {
        auto hv = validate_qfunctor(d, e, m);
        if (!hv.ok()) continue;
        bool retracts = true;
        for (int x = 0; x < n && retracts; ++x) retracts = objects_iso(*e, m[x], x);
        if (retracts) {
            found = hv.get();
            break;
        }
    }

    auto sup = supremum(phi);
    engine_check(found.has_value() == sup.has_value(),
                 "extension along Yoneda disagrees with supremum existence");
    if (found)
        engine_check(std::find(sup->members.begin(), sup->members.end(), found->map[n]) !=
                         sup->members.end(),
                     "extension along Yoneda misses the supremum class");
    return found;
}

QCatPtr random_qcategory(QuantaloidPtr q, int n_objects, Rng& rng) {
    std::vector<std::string> names;
    std::vector<int> ext;
    for (int i = 0; i < n_objects; ++i) {
        names.push_back("x" + std::to_string(i));
        ext.push_back(static_cast<int>(rng.below(q->object_count())));
    }
    std::vector<std::vector<Val>> hom(n_objects, std::vector<Val>(n_objects));
    for (int x = 0; x < n_objects; ++x)
        for (int y = 0; y < n_objects; ++y)
            hom[x][y] = static_cast<Val>(rng.below(q->hom_size(ext[x], ext[y])));

    // join saturation: force units, then close under composition
    bool changed = true;
    while (changed) {
        changed = false;
        for (int x = 0; x < n_objects; ++x) {
            Val u = q->join(ext[x], ext[x], hom[x][x], q->id(ext[x]));
            if (u != hom[x][x]) {
                hom[x][x] = u;
                changed = true;
            }
        }
        for (int x = 0; x < n_objects; ++x)
            for (int y = 0; y < n_objects; ++y)
                for (int z = 0; z < n_objects; ++z) {
                    Val c = q->compose(ext[x], ext[y], ext[z], hom[y][z], hom[x][y]);
                    Val u = q->join(ext[x], ext[z], hom[x][z], c);
                    if (u != hom[x][z]) {
                        hom[x][z] = u;
                        changed = true;
                    }
                }
    }
    auto v = validate_qcategory(std::move(q), std::move(names), std::move(ext), std::move(hom));
    engine_check(v.ok(), "saturation left category law defects");
    return v.get();
}

}  // namespace qk
