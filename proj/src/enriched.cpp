#include "qk/enriched.hpp"

#include <algorithm>

namespace qk {

int QCategory::object_index(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
        if (objects[i] == name) return i;
    return -1;
}

Checked<QCatPtr> validate_qcategory(QuantaloidPtr Q, std::vector<std::string> objects,
                                    std::vector<int> extent, std::vector<std::vector<Val>> hom) {
    Checked<QCatPtr> res;
    auto& diags = res.diagnostics;
    const int n = static_cast<int>(objects.size());
    if (static_cast<int>(extent.size()) != n || static_cast<int>(hom.size()) != n ||
        std::any_of(hom.begin(), hom.end(),
                    [n](const auto& row) { return static_cast<int>(row.size()) != n; })) {
        diags.push_back({"BadIndex", "hom matrix has wrong shape"});
        return res;
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (objects[i] == objects[j]) diags.push_back({"DuplicateName", objects[i]});
    for (int i = 0; i < n; ++i)
        if (extent[i] < 0 || extent[i] >= Q->object_count()) diags.push_back({"BadIndex", objects[i]});
    if (!diags.empty()) return res;

    QCategory e{std::move(Q), std::move(objects), std::move(extent), std::move(hom)};
    for (int x = 0; x < n; ++x)
        if (!e.Q->leq(e.extent[x], e.extent[x], e.Q->id(e.extent[x]), e.h(x, x)))
            diags.push_back({"UnitFailure", e.objects[x]});
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z) {
                Val c = e.Q->compose(e.extent[x], e.extent[y], e.extent[z], e.h(y, z), e.h(x, y));
                if (!e.Q->leq(e.extent[x], e.extent[z], c, e.h(x, z))) {
                    diags.push_back({"CompositionFailure", e.objects[x] + " " + e.objects[y] + " " + e.objects[z]});
                    if (diags.size() >= 8) return res;
                }
            }
    if (!diags.empty()) return res;
    res.value = std::make_shared<const QCategory>(std::move(e));
    return res;
}

bool objects_iso(const QCategory& e, int x, int y) {
    if (e.extent[x] != e.extent[y]) return false;
    int t = e.extent[x];
    return e.Q->leq(t, t, e.Q->id(t), e.h(x, y)) && e.Q->leq(t, t, e.Q->id(t), e.h(y, x));
}

Checked<QFunctor> validate_qfunctor(QCatPtr src, QCatPtr dst, std::vector<int> map) {
    Checked<QFunctor> res;
    auto& diags = res.diagnostics;
    if (src->Q.get() != dst->Q.get()) {
        diags.push_back({"DifferentBase", "source and target enriched over different quantaloids"});
        return res;
    }
    if (static_cast<int>(map.size()) != src->size()) {
        diags.push_back({"BadIndex", "object map has wrong length"});
        return res;
    }
    for (int x = 0; x < src->size(); ++x)
        if (map[x] < 0 || map[x] >= dst->size()) {
            diags.push_back({"BadIndex", src->objects[x]});
            return res;
        }
    for (int x = 0; x < src->size(); ++x)
        if (src->extent[x] != dst->extent[map[x]]) diags.push_back({"ExtentNotPreserved", src->objects[x]});
    if (!diags.empty()) return res;
    const auto& Q = *src->Q;
    for (int x = 0; x < src->size(); ++x)
        for (int y = 0; y < src->size(); ++y)
            if (!Q.leq(src->extent[x], src->extent[y], src->h(x, y), dst->h(map[x], map[y]))) {
                diags.push_back({"HomInequality", src->objects[x] + " " + src->objects[y]});
                if (diags.size() >= 8) return res;
            }
    if (!diags.empty()) return res;
    res.value = QFunctor{std::move(src), std::move(dst), std::move(map)};
    return res;
}

bool functor_leq(const QFunctor& f, const QFunctor& g) {
    const auto& d = *f.dst;
    for (int x = 0; x < f.src->size(); ++x) {
        int t = f.src->extent[x];
        if (!d.Q->leq(t, t, d.Q->id(t), d.h(f.map[x], g.map[x]))) return false;
    }
    return true;
}

bool functor_iso(const QFunctor& f, const QFunctor& g) { return functor_leq(f, g) && functor_leq(g, f); }

Checked<QDistributor> validate_qdistributor(QCatPtr src, QCatPtr dst, std::vector<std::vector<Val>> mat) {
    Checked<QDistributor> res;
    auto& diags = res.diagnostics;
    if (src->Q.get() != dst->Q.get()) {
        diags.push_back({"DifferentBase", "endpoints enriched over different quantaloids"});
        return res;
    }
    if (static_cast<int>(mat.size()) != src->size()) {
        diags.push_back({"BadIndex", "matrix has wrong shape"});
        return res;
    }
    for (const auto& row : mat)
        if (static_cast<int>(row.size()) != dst->size()) {
            diags.push_back({"BadIndex", "matrix has wrong shape"});
            return res;
        }
    const auto& Q = *src->Q;
    QDistributor d{src, dst, std::move(mat)};
    // left action: D(y,y') o phi(x,y) <= phi(x,y')
    for (int x = 0; x < src->size(); ++x)
        for (int y = 0; y < dst->size(); ++y)
            for (int y2 = 0; y2 < dst->size(); ++y2) {
                Val c = Q.compose(src->extent[x], dst->extent[y], dst->extent[y2], dst->h(y, y2), d.mat[x][y]);
                if (!Q.leq(src->extent[x], dst->extent[y2], c, d.mat[x][y2])) {
                    diags.push_back({"BimoduleFailure",
                                     "left " + src->objects[x] + " " + dst->objects[y] + " " + dst->objects[y2]});
                    if (diags.size() >= 8) return res;
                }
            }
    // right action: phi(x,y) o E(x',x) <= phi(x',y)
    for (int x2 = 0; x2 < src->size(); ++x2)
        for (int x = 0; x < src->size(); ++x)
            for (int y = 0; y < dst->size(); ++y) {
                Val c = Q.compose(src->extent[x2], src->extent[x], dst->extent[y], d.mat[x][y], src->h(x2, x));
                if (!Q.leq(src->extent[x2], dst->extent[y], c, d.mat[x2][y])) {
                    diags.push_back({"BimoduleFailure",
                                     "right " + src->objects[x2] + " " + src->objects[x] + " " + dst->objects[y]});
                    if (diags.size() >= 8) return res;
                }
            }
    if (!diags.empty()) return res;
    res.value = std::move(d);
    return res;
}

QDistributor identity_distributor(QCatPtr e) {
    QDistributor d{e, e, e->hom};
    return d;
}

bool dist_leq(const QDistributor& a, const QDistributor& b) {
    for (int x = 0; x < a.src->size(); ++x)
        for (int y = 0; y < a.dst->size(); ++y)
            if (!a.src->Q->leq(a.src->extent[x], a.dst->extent[y], a.mat[x][y], b.mat[x][y])) return false;
    return true;
}

bool dist_eq(const QDistributor& a, const QDistributor& b) { return a.mat == b.mat; }

QDistributor compose_dist(const QDistributor& psi, const QDistributor& phi) {
    const auto& Q = *phi.src->Q;
    const auto& e = *phi.src;
    const auto& d = *phi.dst;  // == *psi.src
    const auto& c = *psi.dst;
    QDistributor out{phi.src, psi.dst, {}};
    out.mat.assign(e.size(), std::vector<Val>(c.size()));
    for (int x = 0; x < e.size(); ++x)
        for (int z = 0; z < c.size(); ++z) {
            Val acc = Q.bottom(e.extent[x], c.extent[z]);
            for (int y = 0; y < d.size(); ++y)
                acc = Q.join(e.extent[x], c.extent[z], acc,
                             Q.compose(e.extent[x], d.extent[y], c.extent[z], psi.mat[y][z], phi.mat[x][y]));
            out.mat[x][z] = acc;
        }
    return out;
}

QDistributor dist_left_residual(const QDistributor& xi, const QDistributor& phi) {
    // xi: E -|-> C, phi: E -|-> D, out: D -|-> C
    const auto& Q = *xi.src->Q;
    const auto& e = *xi.src;
    const auto& c = *xi.dst;
    const auto& d = *phi.dst;
    QDistributor out{phi.dst, xi.dst, {}};
    out.mat.assign(d.size(), std::vector<Val>(c.size()));
    for (int y = 0; y < d.size(); ++y)
        for (int z = 0; z < c.size(); ++z) {
            Val acc = Q.top(d.extent[y], c.extent[z]);
            for (int x = 0; x < e.size(); ++x)
                acc = Q.meet(d.extent[y], c.extent[z], acc,
                             Q.left_residual(e.extent[x], d.extent[y], c.extent[z], xi.mat[x][z], phi.mat[x][y]));
            out.mat[y][z] = acc;
        }
    return out;
}

QDistributor dist_right_residual(const QDistributor& psi, const QDistributor& xi) {
    // psi: D -|-> C, xi: E -|-> C, out: E -|-> D
    const auto& Q = *xi.src->Q;
    const auto& e = *xi.src;
    const auto& c = *xi.dst;
    const auto& d = *psi.src;
    QDistributor out{xi.src, psi.src, {}};
    out.mat.assign(e.size(), std::vector<Val>(d.size()));
    for (int x = 0; x < e.size(); ++x)
        for (int y = 0; y < d.size(); ++y) {
            Val acc = Q.top(e.extent[x], d.extent[y]);
            for (int z = 0; z < c.size(); ++z)
                acc = Q.meet(e.extent[x], d.extent[y], acc,
                             Q.right_residual(e.extent[x], d.extent[y], c.extent[z], psi.mat[y][z], xi.mat[x][z]));
            out.mat[x][y] = acc;
        }
    return out;
}

QDistributor graph(const QFunctor& f) {
    QDistributor out{f.src, f.dst, {}};
    out.mat.assign(f.src->size(), std::vector<Val>(f.dst->size()));
    for (int x = 0; x < f.src->size(); ++x)
        for (int y = 0; y < f.dst->size(); ++y) out.mat[x][y] = f.dst->h(f.map[x], y);
    return out;
}

QDistributor cograph(const QFunctor& f) {
    QDistributor out{f.dst, f.src, {}};
    out.mat.assign(f.dst->size(), std::vector<Val>(f.src->size()));
    for (int y = 0; y < f.dst->size(); ++y)
        for (int x = 0; x < f.src->size(); ++x) out.mat[y][x] = f.dst->h(y, f.map[x]);
    return out;
}

QCatPtr dualize_over(QCatPtr e, QuantaloidPtr q_op) {
    QCategory o;
    o.Q = std::move(q_op);
    o.objects = e->objects;
    o.extent = e->extent;
    o.hom.assign(e->size(), std::vector<Val>(e->size()));
    for (int x = 0; x < e->size(); ++x)
        for (int y = 0; y < e->size(); ++y) o.hom[x][y] = e->hom[y][x];
    return std::make_shared<const QCategory>(std::move(o));
}

QCatPtr dualize(QCatPtr e) {
    return dualize_over(e, std::make_shared<const Quantaloid>(e->Q->opposite()));
}

QFunctor dualize_functor(const QFunctor& f) {
    auto q_op = std::make_shared<const Quantaloid>(f.src->Q->opposite());
    auto src_op = dualize_over(f.src, q_op);
    auto dst_op = f.src.get() == f.dst.get() ? src_op : dualize_over(f.dst, q_op);
    return QFunctor{src_op, dst_op, f.map};
}

QDistributor dualize_dist(const QDistributor& phi) {
    auto q_op = std::make_shared<const Quantaloid>(phi.src->Q->opposite());
    auto src_op = dualize_over(phi.src, q_op);
    auto dst_op = phi.src.get() == phi.dst.get() ? src_op : dualize_over(phi.dst, q_op);
    QDistributor out{dst_op, src_op, {}};
    out.mat.assign(phi.dst->size(), std::vector<Val>(phi.src->size()));
    for (int y = 0; y < phi.dst->size(); ++y)
        for (int x = 0; x < phi.src->size(); ++x) out.mat[y][x] = phi.mat[x][y];
    return out;
}

Fibre fibre(const QCategory& e, int base_object, const Caps& caps) {
    Fibre out;
    out.base_object = base_object;
    for (int x = 0; x < e.size(); ++x)
        if (e.extent[x] == base_object) out.members.push_back(x);
    const int m = static_cast<int>(out.members.size());
    out.le.assign(m, std::vector<bool>(m));
    const Val unit = e.Q->id(base_object);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            out.le[i][j] = e.Q->leq(base_object, base_object, unit, e.h(out.members[i], out.members[j]));
    std::vector<int> cls(m, -1);
    for (int i = 0; i < m; ++i) {
        if (cls[i] >= 0) continue;
        cls[i] = static_cast<int>(out.iso_classes.size());
        out.iso_classes.push_back({i});
        for (int j = i + 1; j < m; ++j)
            if (cls[j] < 0 && out.le[i][j] && out.le[j][i]) {
                cls[j] = cls[i];
                out.iso_classes.back().push_back(j);
            }
    }
    const int k = static_cast<int>(out.iso_classes.size());
    if (k > caps.max_fibre_subset)
        throw TooLargeError("fibre subset sweep over " + std::to_string(k) + " classes", 1LL << k);
    // joins on the quotient poset of iso classes, every subset
    out.order_complete = true;
    for (std::uint32_t mask = 0; mask < (1u << k) && out.order_complete; ++mask) {
        int best = -1;
        for (int c = 0; c < k && best == -1; ++c) {
            bool upper = true;
            for (int s = 0; s < k && upper; ++s)
                if (mask >> s & 1) upper = out.le[out.iso_classes[s][0]][out.iso_classes[c][0]];
            if (!upper) continue;
            bool least = true;
            for (int c2 = 0; c2 < k && least; ++c2) {
                bool upper2 = true;
                for (int s = 0; s < k && upper2; ++s)
                    if (mask >> s & 1) upper2 = out.le[out.iso_classes[s][0]][out.iso_classes[c2][0]];
                if (upper2 && !out.le[out.iso_classes[c][0]][out.iso_classes[c2][0]]) least = false;
            }
            if (least) best = c;
        }
        if (best == -1) {
            out.order_complete = false;
            out.witness = "{";
            bool first = true;
            for (int s = 0; s < k; ++s)
                if (mask >> s & 1) {
                    if (!first) out.witness += " ";
                    out.witness += e.objects[out.members[out.iso_classes[s][0]]];
                    first = false;
                }
            out.witness += "}";
        }
    }
    return out;
}

Checked<QCatPtr> quantale_self_category(QuantaloidPtr q) {
    Checked<QCatPtr> res;
    if (q->object_count() != 1) {
        res.diagnostics.push_back({"NotAQuantale", "self-category needs a one-object base"});
        return res;
    }
    const int n = q->hom_size(0, 0);
    std::vector<std::string> objects;
    std::vector<int> extent(n, 0);
    std::vector<std::vector<Val>> hom(n, std::vector<Val>(n));
    for (int u = 0; u < n; ++u) objects.push_back(q->elem_name(0, 0, u));
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) hom[u][v] = q->left_residual(0, 0, 0, static_cast<Val>(v), static_cast<Val>(u));
    return validate_qcategory(std::move(q), std::move(objects), std::move(extent), std::move(hom));
}

std::vector<std::vector<int>> all_object_maps(const QCategory& src, const QCategory& dst, const Caps& caps) {
    std::vector<std::vector<int>> cand(src.size());
    long long total = 1;
    for (int x = 0; x < src.size(); ++x) {
        for (int y = 0; y < dst.size(); ++y)
            if (dst.extent[y] == src.extent[x]) cand[x].push_back(y);
        total *= std::max<std::size_t>(cand[x].size(), 1);
        if (total > caps.max_presheaf_candidates)
            throw TooLargeError("object map enumeration", total);
        if (cand[x].empty()) return {};
    }
    std::vector<std::vector<int>> out;
    std::vector<int> idx(src.size(), 0);
    if (src.size() == 0) return {std::vector<int>{}};
    while (true) {
        std::vector<int> map(src.size());
        for (int x = 0; x < src.size(); ++x) map[x] = cand[x][idx[x]];
        out.push_back(std::move(map));
        int p = src.size() - 1;
        while (p >= 0 && ++idx[p] == static_cast<int>(cand[p].size())) idx[p--] = 0;
        if (p < 0) break;
    }
    return out;
}

std::vector<QFunctor> all_qfunctors(QCatPtr src, QCatPtr dst, const Caps& caps) {
    std::vector<QFunctor> out;
    for (auto& map : all_object_maps(*src, *dst, caps)) {
        auto f = validate_qfunctor(src, dst, std::move(map));
        if (f.ok()) out.push_back(std::move(*f.value));
    }
    return out;
}

}  // namespace qk
