#include "qk/concrete.hpp"

#include <algorithm>
#include <string>

namespace qk {

namespace {

bool same_presentation(const FiniteCategory& a, const FiniteCategory& b) {
    return a.objects == b.objects && a.mor_names == b.mor_names && a.mor_src == b.mor_src &&
           a.mor_dst == b.mor_dst && a.ids == b.ids && a.homs == b.homs && a.comp == b.comp;
}

/// Morphism ids selected by a bitmask over the hom list at (s,t).
std::vector<int> mask_mors(const FiniteCategory& b, int s, int t, Val m) {
    std::vector<int> out;
    const auto& hs = b.hom(s, t);
    for (std::size_t i = 0; i < hs.size(); ++i)
        if (m >> i & 1u) out.push_back(hs[i]);
    return out;
}

/// The table every lifting of the family must reproduce:
/// row(z) = meet over x of hom(x,z) residuated by the family at x.
std::vector<Val> sink_requirement(const QCategory& e, int target, const std::vector<Val>& comp) {
    const auto& q = *e.Q;
    std::vector<Val> row(e.size());
    for (int z = 0; z < e.size(); ++z) {
        Val acc = q.top(target, e.extent[z]);
        for (int x = 0; x < e.size(); ++x)
            acc = q.meet(target, e.extent[z], acc,
                         q.left_residual(e.extent[x], target, e.extent[z], e.h(x, z), comp[x]));
        row[z] = acc;
    }
    return row;
}

std::vector<Val> source_requirement(const QCategory& e, int target, const std::vector<Val>& comp) {
    const auto& q = *e.Q;
    std::vector<Val> col(e.size());
    for (int z = 0; z < e.size(); ++z) {
        Val acc = q.top(e.extent[z], target);
        for (int x = 0; x < e.size(); ++x)
            acc = q.meet(e.extent[z], target, acc,
                         q.right_residual(e.extent[z], target, e.extent[x], comp[x], e.h(z, x)));
        col[z] = acc;
    }
    return col;
}

/// Least upper bound of a subset of fibre members, -1 when absent.
int fibre_lub(const QCategory& e, const Fibre& f, const std::vector<int>& subset) {
    const Val unit = e.Q->id(f.base_object);
    auto leq = [&](int a, int b) {
        return e.Q->leq(f.base_object, f.base_object, unit, e.h(a, b));
    };
    auto upper = [&](int z) {
        return std::all_of(subset.begin(), subset.end(), [&](int s) { return leq(s, z); });
    };
    for (int c : f.members) {
        if (!upper(c)) continue;
        bool least = true;
        for (int z : f.members)
            if (upper(z) && !leq(c, z)) {
                least = false;
                break;
            }
        if (least) return c;
    }
    return -1;
}

}  // namespace

int ConcreteCategory::object_index(const std::string& name) const {
    for (std::size_t i = 0; i < objects.size(); ++i)
        if (objects[i] == name) return static_cast<int>(i);
    return -1;
}

Checked<ConcreteCategory> validate_concrete(FiniteCategory base, std::vector<std::string> objects,
                                            std::vector<int> extent,
                                            std::vector<std::vector<Val>> morph) {
    Checked<ConcreteCategory> out;
    auto& d = out.diagnostics;
    const int n = static_cast<int>(objects.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (objects[i] == objects[j]) d.push_back({"DuplicateName", objects[i]});
    if (static_cast<int>(extent.size()) != n) {
        d.push_back({"BadElement", "extent list does not match the object list"});
        return out;
    }
    for (int i = 0; i < n; ++i)
        if (extent[i] < 0 || extent[i] >= base.object_count())
            d.push_back({"BadElement", "extent of " + objects[i]});
    if (!d.empty()) return out;
    if (static_cast<int>(morph.size()) != n) {
        d.push_back({"BadElement", "morphism table is not square"});
        return out;
    }
    for (int x = 0; x < n; ++x) {
        if (static_cast<int>(morph[x].size()) != n) {
            d.push_back({"BadElement", "morphism table is not square"});
            return out;
        }
        for (int y = 0; y < n; ++y) {
            const std::size_t bits = base.hom(extent[x], extent[y]).size();
            if (morph[x][y] >> bits)
                d.push_back({"BadElement", "morphisms " + objects[x] + " -> " + objects[y]});
        }
    }
    if (!d.empty()) return out;
    for (int x = 0; x < n; ++x) {
        const int id = base.id(extent[x]);
        if (!(morph[x][x] >> base.hom_pos[id] & 1u)) d.push_back({"IdentityMissing", objects[x]});
    }
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z)
                for (int f : mask_mors(base, extent[x], extent[y], morph[x][y]))
                    for (int g : mask_mors(base, extent[y], extent[z], morph[y][z])) {
                        const int h = base.compose(g, f);
                        if (!(morph[x][z] >> base.hom_pos[h] & 1u))
                            d.push_back({"NotClosed", objects[x] + " " + objects[y] + " " +
                                                          objects[z] + ": " + base.mor_names[g] +
                                                          " . " + base.mor_names[f]});
                    }
    if (!d.empty()) return out;
    out.value = ConcreteCategory{std::move(base), std::move(objects), std::move(extent),
                                 std::move(morph)};
    return out;
}

QuantaloidPtr free_quantaloid(const FiniteCategory& base, const Caps& caps) {
    return std::make_shared<const Quantaloid>(Quantaloid::free_over(base, caps));
}

QCatPtr encode(QuantaloidPtr qb, const ConcreteCategory& e) {
    engine_check(qb->is_free() && same_presentation(qb->base(), e.base),
                 "encoding against a quantaloid that is not free over the same base");
    auto v = validate_qcategory(std::move(qb), e.objects, e.extent, e.morph);
    engine_check(v.ok(), "concreteness laws do not transfer to the enriched laws");
    return v.get();
}

Checked<ConcreteCategory> decode(QCatPtr enc) {
    Checked<ConcreteCategory> out;
    if (!enc->Q->is_free()) {
        out.diagnostics.push_back({"NotFree", "decoding needs a powerset-quantaloid category"});
        return out;
    }
    auto v = validate_concrete(enc->Q->base(), enc->objects, enc->extent, enc->hom);
    engine_check(v.ok(), "enriched laws do not transfer back to concreteness laws");
    out.value = v.get();
    return out;
}

ConcreteCategory dual_concrete(const ConcreteCategory& e) {
    const int n = e.size();
    std::vector<std::vector<Val>> morph(n, std::vector<Val>(n));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) morph[x][y] = e.morph[y][x];
    auto v = validate_concrete(opposite(e.base), e.objects, e.extent, std::move(morph));
    engine_check(v.ok(), "the transposed category fails the concreteness laws");
    return v.get();
}

Checked<std::vector<int>> validate_concrete_functor(const ConcreteCategory& e,
                                                    const ConcreteCategory& d,
                                                    std::vector<int> map) {
    Checked<std::vector<int>> out;
    auto& diag = out.diagnostics;
    if (!same_presentation(e.base, d.base)) {
        diag.push_back({"DifferentBase", "the categories live over different bases"});
        return out;
    }
    if (static_cast<int>(map.size()) != e.size()) {
        diag.push_back({"BadElement", "map length does not match the object list"});
        return out;
    }
    for (int x = 0; x < e.size(); ++x)
        if (map[x] < 0 || map[x] >= d.size()) {
            diag.push_back({"BadElement", "image of " + e.objects[x]});
            return out;
        }
    for (int x = 0; x < e.size(); ++x)
        if (d.extent[map[x]] != e.extent[x])
            diag.push_back({"ExtentNotPreserved", e.objects[x]});
    if (!diag.empty()) return out;
    for (int x = 0; x < e.size(); ++x)
        for (int y = 0; y < e.size(); ++y)
            if (e.morph[x][y] & ~d.morph[map[x]][map[y]])
                diag.push_back({"HomInequality", e.objects[x] + " " + e.objects[y]});
    if (!diag.empty()) return out;
    out.value = std::move(map);
    return out;
}

bool concrete_functor_leq(const ConcreteCategory& d, const std::vector<int>& f,
                          const std::vector<int>& g) {
    engine_check(f.size() == g.size(), "comparing maps with different shapes");
    for (std::size_t x = 0; x < f.size(); ++x) {
        const int id = d.base.id(d.extent[f[x]]);
        if (!(d.morph[f[x]][g[x]] >> d.base.hom_pos[id] & 1u)) return false;
    }
    return true;
}

AgreementReport check_concrete_enriched_agreement(QuantaloidPtr qb, const ConcreteCategory& e,
                                                  const ConcreteCategory& d, const Caps& caps) {
    AgreementReport r;
    QCatPtr enc_e = encode(qb, e), enc_d = encode(qb, d);
    std::vector<QFunctor> accepted;
    for (auto& map : all_object_maps(*enc_e, *enc_d, caps)) {
        ++r.maps;
        const bool concrete_ok = validate_concrete_functor(e, d, map).ok();
        auto enriched = validate_qfunctor(enc_e, enc_d, map);
        engine_check(concrete_ok == enriched.ok(),
                     "a structure-preserving map and its enriched reading disagree");
        if (enriched.ok()) accepted.push_back(enriched.get());
    }
    r.functors = static_cast<long long>(accepted.size());
    for (const auto& f : accepted)
        for (const auto& g : accepted) {
            ++r.ordered_pairs;
            engine_check(concrete_functor_leq(d, f.map, g.map) == functor_leq(f, g),
                         "the concrete and enriched orders disagree");
        }
    return r;
}

Presheaf normalize_sink(QCatPtr enc, const StructuredSink& s) {
    const auto& q = *enc->Q;
    const int n = enc->size();
    engine_check(s.target >= 0 && s.target < q.object_count() &&
                     static_cast<int>(s.comp.size()) == n,
                 "a sink does not fit its category");
    for (int x = 0; x < n; ++x)
        engine_check(s.comp[x] < static_cast<Val>(q.hom_size(enc->extent[x], s.target)),
                     "a sink component is out of range");
    auto pass = [&](const std::vector<Val>& c) {
        std::vector<Val> nx(n);
        for (int xp = 0; xp < n; ++xp) {
            Val acc = c[xp];
            for (int x = 0; x < n; ++x)
                acc = q.join(enc->extent[xp], s.target, acc,
                             q.compose(enc->extent[xp], enc->extent[x], s.target, c[x],
                                       enc->h(xp, x)));
            nx[xp] = acc;
        }
        return nx;
    };
    std::vector<Val> one = pass(s.comp);
    engine_check(pass(one) == one, "sink normalization needs more than one pass");
    auto v = validate_presheaf(enc, s.target, std::move(one));
    engine_check(v.ok(), "a normalized sink fails the presheaf laws");
    return v.get();
}

CoPresheaf normalize_source(QCatPtr enc, const StructuredSource& s) {
    const auto& q = *enc->Q;
    const int n = enc->size();
    engine_check(s.target >= 0 && s.target < q.object_count() &&
                     static_cast<int>(s.comp.size()) == n,
                 "a source does not fit its category");
    for (int x = 0; x < n; ++x)
        engine_check(s.comp[x] < static_cast<Val>(q.hom_size(s.target, enc->extent[x])),
                     "a source component is out of range");
    auto pass = [&](const std::vector<Val>& c) {
        std::vector<Val> nx(n);
        for (int xp = 0; xp < n; ++xp) {
            Val acc = c[xp];
            for (int x = 0; x < n; ++x)
                acc = q.join(s.target, enc->extent[xp], acc,
                             q.compose(s.target, enc->extent[x], enc->extent[xp], enc->h(x, xp),
                                       c[x]));
            nx[xp] = acc;
        }
        return nx;
    };
    std::vector<Val> one = pass(s.comp);
    engine_check(pass(one) == one, "source normalization needs more than one pass");
    auto v = validate_copresheaf(enc, s.target, std::move(one));
    engine_check(v.ok(), "a normalized source fails the copresheaf laws");
    return v.get();
}

std::optional<ObjClass> final_lift(QCatPtr enc, const StructuredSink& s) {
    Presheaf phi = normalize_sink(enc, s);
    engine_check(sink_requirement(*enc, s.target, s.comp) ==
                     sink_requirement(*enc, s.target, phi.comp),
                 "a sink and its normalization ask for different liftings");
    return supremum(phi);
}

std::optional<ObjClass> initial_lift(QCatPtr enc, const StructuredSource& s) {
    CoPresheaf psi = normalize_source(enc, s);
    engine_check(source_requirement(*enc, s.target, s.comp) ==
                     source_requirement(*enc, s.target, psi.comp),
                 "a source and its normalization ask for different liftings");
    return infimum(psi);
}

TopologicalReport is_topological(QCatPtr enc, const Caps& caps) {
    TopologicalReport r;
    r.flag = is_total(enc, caps);
    bool all = true;
    for (const auto& p : enumerate_presheaves(enc, -1, caps)) {
        ++r.sinks;
        StructuredSink s{p.extent, p.comp};
        engine_check(normalize_sink(enc, s) == p, "normalizing a closed sink changed it");
        if (!final_lift(enc, s)) all = false;
    }
    engine_check(all == r.flag.value, "totality and sink liftings disagree");
    return r;
}

FlagWitness is_cofibred(QCatPtr enc) {
    const auto& q = *enc->Q;
    engine_check(q.is_free(), "single-map liftings need a powerset-quantaloid category");
    const int n = enc->size();
    for (int x = 0; x < n; ++x)
        for (int t = 0; t < q.object_count(); ++t) {
            const auto& hs = q.base().hom(enc->extent[x], t);
            for (std::size_t i = 0; i < hs.size(); ++i) {
                StructuredSink s{t, std::vector<Val>(n, 0)};
                s.comp[x] = Val(1) << i;
                auto lift = final_lift(enc, s);
                auto tens = tensor(enc, x, t, s.comp[x]);
                engine_check(lift.has_value() == tens.has_value() &&
                                 (!lift || lift->members == tens->members),
                             "a single-map lifting differs from the tensor by its atom");
                if (!lift)
                    return {false,
                            "x=" + enc->objects[x] + " f=" + q.base().mor_names[hs[i]]};
            }
        }
    return {true, {}};
}

FlagWitness is_fibred(QCatPtr enc) {
    const auto& q = *enc->Q;
    engine_check(q.is_free(), "single-map liftings need a powerset-quantaloid category");
    const int n = enc->size();
    for (int x = 0; x < n; ++x)
        for (int t = 0; t < q.object_count(); ++t) {
            const auto& hs = q.base().hom(t, enc->extent[x]);
            for (std::size_t i = 0; i < hs.size(); ++i) {
                StructuredSource s{t, std::vector<Val>(n, 0)};
                s.comp[x] = Val(1) << i;
                auto lift = initial_lift(enc, s);
                auto cot = cotensor(enc, x, t, s.comp[x]);
                engine_check(lift.has_value() == cot.has_value() &&
                                 (!lift || lift->members == cot->members),
                             "a single-map colifting differs from the cotensor by its atom");
                if (!lift)
                    return {false,
                            "x=" + enc->objects[x] + " f=" + q.base().mor_names[hs[i]]};
            }
        }
    return {true, {}};
}

FlagWitness check_tensor_decomposition(QCatPtr enc, const Caps& caps) {
    FlagWitness tens = is_tensored(enc, caps);
    FlagWitness cof = is_cofibred(enc);
    const auto& q = *enc->Q;
    const int n = enc->size();
    bool decomposed = cof.value;
    if (cof.value) {
        for (int x = 0; x < n && decomposed; ++x)
            for (int t = 0; t < q.object_count() && decomposed; ++t) {
                const int hs = q.hom_size(enc->extent[x], t);
                for (Val u = 0; u < static_cast<Val>(hs) && decomposed; ++u) {
                    // intersection of the rows of the single-map liftings
                    // of the atoms below u
                    std::vector<Val> want(n);
                    for (int z = 0; z < n; ++z) want[z] = q.top(t, enc->extent[z]);
                    for (std::size_t i = 0; u >> i; ++i) {
                        if (!(u >> i & 1u)) continue;
                        StructuredSink s{t, std::vector<Val>(n, 0)};
                        s.comp[x] = Val(1) << i;
                        auto lift = final_lift(enc, s);
                        engine_check(lift.has_value(), "a single map lost its lifting");
                        for (int z = 0; z < n; ++z)
                            want[z] = q.meet(t, enc->extent[z], want[z],
                                             enc->h(lift->rep(), z));
                    }
                    bool found = false;
                    for (int y = 0; y < n && !found; ++y) {
                        if (enc->extent[y] != t) continue;
                        bool match = true;
                        for (int z = 0; z < n && match; ++z) match = enc->h(y, z) == want[z];
                        found = match;
                    }
                    decomposed = found;
                }
            }
    }
    engine_check(tens.value == decomposed, "tensors disagree with the single-map decomposition");
    return tens;
}

DualityReport check_topological_duality(QuantaloidPtr qb, const ConcreteCategory& e,
                                        const Caps& caps) {
    DualityReport r;
    QCatPtr enc = encode(qb, e);
    r.topological = is_topological(enc, caps).flag;

    ConcreteCategory de = dual_concrete(e);
    QuantaloidPtr qop = free_quantaloid(de.base, caps);
    QCatPtr denc = encode(qop, de);
    r.dual_topological = is_topological(denc, caps).flag;
    engine_check(r.dual_topological.value == is_cototal(enc, caps).value,
                 "liftings of the transposed category disagree with coliftings");

    r.fibred = is_fibred(enc);
    r.cofibred = is_cofibred(enc);
    r.fibres_complete = is_order_complete(enc, caps);
    const bool wyler = r.fibred.value && r.cofibred.value && r.fibres_complete.value;
    engine_check(r.topological.value == r.dual_topological.value && r.topological.value == wyler,
                 "the three lifting characterizations disagree");
    if (r.fibred.value && r.fibres_complete.value)
        engine_check(is_conically_cocomplete(enc, caps).value,
                     "fibre joins fail to produce conical suprema");
    if (r.cofibred.value && is_conically_cocomplete(enc, caps).value)
        engine_check(is_tensored(enc, caps).value, "conical suprema fail to produce tensors");
    r.agree = true;
    return r;
}

Checked<FlagWitness> check_initial_source(QCatPtr e, int probe_bound, const Caps& caps) {
    Checked<FlagWitness> out;
    QuantaloidPtr q = e->Q;
    if (q->object_count() != 1) {
        out.diagnostics.push_back({"NotAQuantale", "the probe needs a one-object base"});
        return out;
    }
    QCatPtr qsc = quantale_self_category(q).get();
    const int m = q->hom_size(0, 0), ne = e->size();
    // every hom-into family is itself a functor into the base-as-category
    for (int x = 0; x < ne; ++x) {
        std::vector<int> map(ne);
        for (int z = 0; z < ne; ++z) map[z] = static_cast<int>(e->h(x, z));
        engine_check(validate_qfunctor(e, qsc, map).ok(),
                     "a hom-into family fails the functor laws");
    }
    long long cats = 0, probes = 0;
    for (int n = 1; n <= probe_bound; ++n) {
        long long total = 1;
        for (int i = 0; i < n * n; ++i) {
            total *= m;
            if (total > caps.max_presheaf_candidates)
                throw TooLargeError("probe category enumeration", total);
        }
        long long map_total = 1;
        for (int i = 0; i < n; ++i) {
            map_total *= std::max(ne, 1);
            if (map_total > caps.max_presheaf_candidates)
                throw TooLargeError("probe map enumeration", map_total);
        }
        std::vector<std::string> names(n);
        for (int i = 0; i < n; ++i) names[i] = "w" + std::to_string(i);
        std::vector<Val> mat(n * n, 0);
        while (true) {
            std::vector<std::vector<Val>> hom(n, std::vector<Val>(n));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) hom[i][j] = mat[i * n + j];
            auto w = validate_qcategory(q, names, std::vector<int>(n, 0), std::move(hom));
            if (w.ok()) {
                ++cats;
                QCatPtr wc = w.get();
                std::vector<int> h(n, 0);
                while (ne > 0) {
                    ++probes;
                    bool premise = true;
                    for (int x = 0; x < ne && premise; ++x)
                        for (int a = 0; a < n && premise; ++a)
                            for (int b = 0; b < n && premise; ++b)
                                premise = q->leq(0, 0, wc->h(a, b),
                                                 q->left_residual(0, 0, 0, e->h(x, h[b]),
                                                                  e->h(x, h[a])));
                    bool functor = true;
                    for (int a = 0; a < n && functor; ++a)
                        for (int b = 0; b < n && functor; ++b)
                            functor = q->leq(0, 0, wc->h(a, b), e->h(h[a], h[b]));
                    engine_check(premise == functor, "the hom-into source fails to be initial");
                    int p = n - 1;
                    while (p >= 0 && ++h[p] == ne) h[p--] = 0;
                    if (p < 0) break;
                }
            }
            int p = n * n - 1;
            while (p >= 0 && ++mat[p] == static_cast<Val>(m)) mat[p--] = 0;
            if (p < 0) break;
        }
    }
    out.value = FlagWitness{true, "verified up to probe size " + std::to_string(probe_bound) +
                                      " over " + std::to_string(cats) + " categories and " +
                                      std::to_string(probes) + " maps"};
    return out;
}

Checked<HullReport> presheaf_hull_factorization(const QFunctor& f, const Caps& caps) {
    Checked<HullReport> out;
    FlagWitness tot = is_total(f.dst, caps);
    if (!tot.value) {
        out.diagnostics.push_back({"NotTotal", tot.witness});
        return out;
    }
    HullReport r;
    r.pe = build_PE(f.src, caps);
    r.yon = yoneda_functor(f.src, r.pe);
    const int np = static_cast<int>(r.pe.obs.size());
    std::vector<int> hmap(np, -1);
    for (int i = 0; i < np; ++i) {
        auto s = supremum(pushforward(f, r.pe.obs[i]));
        engine_check(s.has_value(), "a pushforward lost its supremum in a complete category");
        hmap[i] = s->rep();
        auto forced = weighted_colimit(f, r.pe.obs[i]);
        engine_check(forced.has_value() &&
                         std::find(forced->members.begin(), forced->members.end(), hmap[i]) !=
                             forced->members.end(),
                     "the factorization escapes the forced colimit class");
    }
    auto hv = validate_qfunctor(r.pe.cat, f.dst, std::move(hmap));
    engine_check(hv.ok(), "the factorization fails the functor laws");
    r.factor = hv.get();
    for (int x = 0; x < f.src->size(); ++x)
        engine_check(objects_iso(*f.dst, r.factor.map[r.yon.map[x]], f.map[x]),
                     "the factorization does not restrict to the original functor");

    // preservation of tensors: with the completion tensored and
    // order-complete, tensor and fibre-join preservation certify that the
    // factorization is a left adjoint
    const auto& q = *f.src->Q;
    for (int i = 0; i < np; ++i)
        for (int t = 0; t < q.object_count(); ++t)
            for (Val u = 0; u < static_cast<Val>(q.hom_size(r.pe.cat->extent[i], t)); ++u) {
                auto tp = tensor(r.pe.cat, i, t, u);
                engine_check(tp.has_value(), "the sink completion is missing a tensor");
                auto td = tensor(f.dst, r.factor.map[i], t, u);
                engine_check(td.has_value(), "the image of a tensor lost its tensor");
                engine_check(objects_iso(*f.dst, r.factor.map[tp->rep()], td->rep()),
                             "the factorization does not preserve tensors");
            }

    // preservation of fibre joins, spelled out subset by subset
    for (int t = 0; t < q.object_count(); ++t) {
        Fibre pf = fibre(*r.pe.cat, t, caps);
        Fibre df = fibre(*f.dst, t, caps);
        const int k = static_cast<int>(pf.members.size());
        if (k > caps.max_fibre_subset)
            throw TooLargeError("fibre subset sweep over " + std::to_string(k) + " members",
                                1LL << k);
        for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
            std::vector<int> subset, image;
            for (int i = 0; i < k; ++i)
                if (mask >> i & 1u) {
                    subset.push_back(pf.members[i]);
                    image.push_back(r.factor.map[pf.members[i]]);
                }
            const int join_pe = fibre_lub(*r.pe.cat, pf, subset);
            engine_check(join_pe >= 0, "the sink completion is missing a fibre join");
            const int join_d = fibre_lub(*f.dst, df, image);
            engine_check(join_d >= 0, "the image of a fibre family lost its join");
            engine_check(objects_iso(*f.dst, r.factor.map[join_pe], join_d),
                         "the factorization does not preserve fibre joins");
        }
    }

    // uniqueness among left adjoints with the same restriction; the brute
    // adjoint confirmation shares the feasibility budget
    long long budget = 1, adjoint_budget = 1;
    bool feasible = true;
    for (int i = 0; i < np && feasible; ++i) {
        long long c = 0;
        for (int y = 0; y < f.dst->size(); ++y)
            if (f.dst->extent[y] == r.pe.cat->extent[i]) ++c;
        budget *= std::max(c, 1LL);
        feasible = budget <= caps.max_presheaf_candidates;
    }
    for (int y = 0; y < f.dst->size() && feasible; ++y) {
        long long c = 0;
        for (int i = 0; i < np; ++i)
            if (f.dst->extent[y] == r.pe.cat->extent[i]) ++c;
        adjoint_budget *= std::max(c, 1LL);
        feasible = adjoint_budget <= caps.max_presheaf_candidates;
    }
    if (feasible) {
        r.search_exhaustive = true;
        AdjointSearch adj = has_right_adjoint(r.factor, caps);
        engine_check(adj.preconditions_ok, "the sink completion lost tensors or fibre joins");
        engine_check(adj.exists, "the factorization fails to be a left adjoint");
        for (const auto& g : all_qfunctors(r.pe.cat, f.dst, caps)) {
            bool restricts = true;
            for (int x = 0; x < f.src->size() && restricts; ++x)
                restricts = objects_iso(*f.dst, g.map[r.yon.map[x]], f.map[x]);
            if (!restricts) continue;
            if (!has_right_adjoint(g, caps).exists) continue;
            ++r.alternatives;
            for (int i = 0; i < np; ++i)
                engine_check(objects_iso(*f.dst, g.map[i], r.factor.map[i]),
                             "a second colimit-preserving factorization differs");
        }
        engine_check(r.alternatives >= 1, "the factorization failed its own search filter");
    }
    out.value = std::move(r);
    return out;
}

}  // namespace qk
