#include "qk/quantaloid.hpp"

#include <bit>

namespace qk {

Quantaloid::Quantaloid(const Quantaloid& other)
    : kind_(other.kind_),
      objects_(other.objects_),
      homs_(other.homs_),
      comp_(other.comp_),
      ids_(other.ids_),
      base_(other.base_),
      memo_(std::make_unique<ResidualMemo>()) {}

Quantaloid& Quantaloid::operator=(const Quantaloid& other) {
    if (this != &other) *this = Quantaloid(other);
    return *this;
}

int Quantaloid::object_index(const std::string& name) const {
    for (int i = 0; i < object_count(); ++i)
        if (objects_[i] == name) return i;
    return -1;
}

int Quantaloid::hom_size(int s, int t) const {
    if (kind_ == Kind::Free) return 1 << base_.hom(s, t).size();
    return homs_[s * object_count() + t].size();
}

bool Quantaloid::leq(int s, int t, Val a, Val b) const {
    if (kind_ == Kind::Free) return (a & ~b) == 0;
    return homs_[s * object_count() + t].leq(a, b);
}

Val Quantaloid::join(int s, int t, Val a, Val b) const {
    if (kind_ == Kind::Free) return a | b;
    return homs_[s * object_count() + t].join(a, b);
}

Val Quantaloid::meet(int s, int t, Val a, Val b) const {
    if (kind_ == Kind::Free) return a & b;
    return homs_[s * object_count() + t].meet(a, b);
}

Val Quantaloid::bottom(int s, int t) const {
    if (kind_ == Kind::Free) return 0;
    return homs_[s * object_count() + t].bottom;
}

Val Quantaloid::top(int s, int t) const {
    if (kind_ == Kind::Free) return (Val{1} << base_.hom(s, t).size()) - 1;
    return homs_[s * object_count() + t].top;
}

Val Quantaloid::id(int s) const {
    if (kind_ == Kind::Free) return Val{1} << base_.hom_pos[base_.id(s)];
    return ids_[s];
}

Val Quantaloid::compose_raw(int s, int t, int u, Val g, Val f) const {
    const int n = object_count();
    if (kind_ == Kind::Free) {
        // elementwise: { g0 o f0 | g0 in g, f0 in f }
        const auto& hf = base_.hom(s, t);
        const auto& hg = base_.hom(t, u);
        Val out = 0;
        for (std::size_t ig = 0; ig < hg.size(); ++ig) {
            if (!(g >> ig & 1)) continue;
            for (std::size_t jf = 0; jf < hf.size(); ++jf) {
                if (!(f >> jf & 1)) continue;
                out |= Val{1} << base_.hom_pos[base_.compose(hg[ig], hf[jf])];
            }
        }
        return out;
    }
    return comp_[(s * n + t) * n + u][g * hom_size(s, t) + f];
}

Val Quantaloid::compose(int s, int t, int u, Val g, Val f) const { return compose_raw(s, t, u, g, f); }

namespace {

std::uint64_t memo_key(bool left, int s, int t, int u, Val a, Val b) {
    return (std::uint64_t{left} << 56) | (std::uint64_t(s & 0xff) << 48) | (std::uint64_t(t & 0xff) << 40) |
           (std::uint64_t(u & 0xff) << 32) | (std::uint64_t(a & 0xffff) << 16) | std::uint64_t(b & 0xffff);
}

}  // namespace

Val Quantaloid::left_residual(int s, int t, int u, Val w, Val f) const {
    const std::uint64_t key = memo_key(true, s, t, u, w, f);
    {
        std::lock_guard<std::mutex> lock(memo_->mutex);
        auto it = memo_->map.find(key);
        if (it != memo_->map.end()) return it->second;
    }
    Val out = bottom(t, u);
    const int n = hom_size(t, u);
    for (Val v = 0; v < static_cast<Val>(n); ++v)
        if (leq(s, u, compose_raw(s, t, u, v, f), w)) out = join(t, u, out, v);
    std::lock_guard<std::mutex> lock(memo_->mutex);
    memo_->map.emplace(key, out);
    return out;
}

Val Quantaloid::right_residual(int s, int t, int u, Val g, Val w) const {
    const std::uint64_t key = memo_key(false, s, t, u, g, w);
    {
        std::lock_guard<std::mutex> lock(memo_->mutex);
        auto it = memo_->map.find(key);
        if (it != memo_->map.end()) return it->second;
    }
    Val out = bottom(s, t);
    const int n = hom_size(s, t);
    for (Val f = 0; f < static_cast<Val>(n); ++f)
        if (leq(s, u, compose_raw(s, t, u, g, f), w)) out = join(s, t, out, f);
    std::lock_guard<std::mutex> lock(memo_->mutex);
    memo_->map.emplace(key, out);
    return out;
}

Val Quantaloid::free_left_residual_direct(int s, int t, int u, Val w, Val f) const {
    // { g0 : t -> u | for every f0 in f, g0 o f0 in w }
    const auto& hf = base_.hom(s, t);
    const auto& hg = base_.hom(t, u);
    Val out = 0;
    for (std::size_t ig = 0; ig < hg.size(); ++ig) {
        bool all = true;
        for (std::size_t jf = 0; jf < hf.size() && all; ++jf)
            if (f >> jf & 1) all = (w >> base_.hom_pos[base_.compose(hg[ig], hf[jf])]) & 1;
        if (all) out |= Val{1} << ig;
    }
    return out;
}

Val Quantaloid::free_right_residual_direct(int s, int t, int u, Val g, Val w) const {
    // { f0 : s -> t | for every g0 in g, g0 o f0 in w }
    const auto& hf = base_.hom(s, t);
    const auto& hg = base_.hom(t, u);
    Val out = 0;
    for (std::size_t jf = 0; jf < hf.size(); ++jf) {
        bool all = true;
        for (std::size_t ig = 0; ig < hg.size() && all; ++ig)
            if (g >> ig & 1) all = (w >> base_.hom_pos[base_.compose(hg[ig], hf[jf])]) & 1;
        if (all) out |= Val{1} << jf;
    }
    return out;
}

const FiniteCategory& Quantaloid::base() const { return base_; }

const FiniteLattice& Quantaloid::hom_lattice(int s, int t) const { return homs_[s * object_count() + t]; }

std::string Quantaloid::elem_name(int s, int t, Val v) const {
    if (kind_ == Kind::Table) return homs_[s * object_count() + t].elems[v];
    const auto& hom = base_.hom(s, t);
    std::string out = "{";
    bool first = true;
    for (std::size_t i = 0; i < hom.size(); ++i)
        if (v >> i & 1) {
            if (!first) out += " ";
            out += base_.mor_names[hom[i]];
            first = false;
        }
    return out + "}";
}

Checked<Quantaloid> Quantaloid::validate(std::vector<std::string> objects, std::vector<FiniteLattice> homs,
                                         std::vector<std::vector<Val>> comp, std::vector<Val> identities) {
    Checked<Quantaloid> res;
    auto& diags = res.diagnostics;
    Quantaloid q;
    q.kind_ = Kind::Table;
    q.objects_ = std::move(objects);
    q.homs_ = std::move(homs);
    q.comp_ = std::move(comp);
    q.ids_ = std::move(identities);
    const int n = q.object_count();
    if (q.homs_.size() != std::size_t(n) * n || q.comp_.size() != std::size_t(n) * n * n ||
        q.ids_.size() != std::size_t(n)) {
        diags.push_back({"BadIndex", "hom/composition tables have wrong shape"});
        return res;
    }

    auto name = [&](int s, int t, Val v) { return q.elem_name(s, t, v); };

    // identity laws
    for (int s = 0; s < n && diags.size() < 8; ++s)
        for (int t = 0; t < n && diags.size() < 8; ++t)
            for (int f = 0; f < q.hom_size(s, t); ++f) {
                if (q.compose(s, t, t, q.ids_[t], f) != static_cast<Val>(f))
                    diags.push_back({"NotUnital", q.objects_[t] + ": " + name(s, t, f)});
                if (q.compose(s, s, t, f, q.ids_[s]) != static_cast<Val>(f))
                    diags.push_back({"NotUnital", q.objects_[s] + ": " + name(s, t, f)});
            }

    // join and bottom preservation in each variable
    for (int s = 0; s < n && diags.empty(); ++s)
        for (int t = 0; t < n && diags.empty(); ++t)
            for (int u = 0; u < n && diags.empty(); ++u) {
                const int nf = q.hom_size(s, t), ng = q.hom_size(t, u);
                for (int g = 0; g < ng && diags.empty(); ++g) {
                    if (q.compose(s, t, u, g, q.bottom(s, t)) != q.bottom(s, u))
                        diags.push_back({"JoinNotPreserved", name(t, u, g) + " o bottom"});
                    for (int f1 = 0; f1 < nf; ++f1)
                        for (int f2 = f1; f2 < nf; ++f2) {
                            Val lhs = q.compose(s, t, u, g, q.join(s, t, f1, f2));
                            Val rhs = q.join(s, u, q.compose(s, t, u, g, f1), q.compose(s, t, u, g, f2));
                            if (lhs != rhs) {
                                diags.push_back({"JoinNotPreserved",
                                                 name(t, u, g) + " o (" + name(s, t, f1) + " v " +
                                                     name(s, t, f2) + ")"});
                                break;
                            }
                        }
                }
                for (int f = 0; f < nf && diags.empty(); ++f) {
                    if (q.compose(s, t, u, q.bottom(t, u), f) != q.bottom(s, u))
                        diags.push_back({"JoinNotPreserved", "bottom o " + name(s, t, f)});
                    for (int g1 = 0; g1 < ng && diags.empty(); ++g1)
                        for (int g2 = g1; g2 < ng; ++g2) {
                            Val lhs = q.compose(s, t, u, q.join(t, u, g1, g2), f);
                            Val rhs = q.join(s, u, q.compose(s, t, u, g1, f), q.compose(s, t, u, g2, f));
                            if (lhs != rhs) {
                                diags.push_back({"JoinNotPreserved",
                                                 "(" + name(t, u, g1) + " v " + name(t, u, g2) + ") o " +
                                                     name(s, t, f)});
                                break;
                            }
                        }
                }
            }

    // associativity
    for (int s = 0; s < n && diags.empty(); ++s)
        for (int t = 0; t < n && diags.empty(); ++t)
            for (int u = 0; u < n && diags.empty(); ++u)
                for (int v = 0; v < n && diags.empty(); ++v)
                    for (int f = 0; f < q.hom_size(s, t) && diags.empty(); ++f)
                        for (int g = 0; g < q.hom_size(t, u) && diags.empty(); ++g)
                            for (int h = 0; h < q.hom_size(u, v); ++h) {
                                Val a = q.compose(s, u, v, h, q.compose(s, t, u, g, f));
                                Val b = q.compose(s, t, v, q.compose(t, u, v, h, g), f);
                                if (a != b) {
                                    diags.push_back({"NotAssociative",
                                                     name(u, v, h) + " o " + name(t, u, g) + " o " +
                                                         name(s, t, f)});
                                    break;
                                }
                            }

    if (!diags.empty()) return res;
    res.value = std::move(q);
    return res;
}

Quantaloid Quantaloid::free_over(FiniteCategory base, const Caps& caps) {
    for (int s = 0; s < base.object_count(); ++s)
        for (int t = 0; t < base.object_count(); ++t)
            if (static_cast<int>(base.hom(s, t).size()) > caps.max_free_hom)
                throw TooLargeError("powerset hom over " + base.objects[s] + " -> " + base.objects[t],
                                    1LL << base.hom(s, t).size());
    Quantaloid q;
    q.kind_ = Kind::Free;
    q.objects_ = base.objects;
    q.base_ = std::move(base);
    return q;
}

Checked<Quantaloid> Quantaloid::from_quantale(const FiniteLattice& carrier,
                                              const std::vector<std::vector<int>>& tensor, int unit) {
    std::vector<std::vector<Val>> comp(1);
    const int n = carrier.size();
    comp[0].resize(std::size_t(n) * n);
    for (int g = 0; g < n; ++g)
        for (int f = 0; f < n; ++f) comp[0][g * n + f] = static_cast<Val>(tensor[g][f]);
    return validate({"*"}, {carrier}, std::move(comp), {static_cast<Val>(unit)});
}

Quantaloid Quantaloid::opposite() const {
    const int n = object_count();
    if (kind_ == Kind::Free) {
        Caps caps;
        caps.max_free_hom = 32;  // already admitted on the way in
        return free_over(qk::opposite(base_), caps);
    }
    Quantaloid o;
    o.kind_ = Kind::Table;
    o.objects_ = objects_;
    o.ids_ = ids_;
    o.homs_.resize(std::size_t(n) * n);
    o.comp_.resize(std::size_t(n) * n * n);
    for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t) o.homs_[s * n + t] = homs_[t * n + s];
    // composition g o' f = f o g with arguments retyped through the swap
    for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t)
            for (int u = 0; u < n; ++u) {
                auto& table = o.comp_[(s * n + t) * n + u];
                const int nf = o.homs_[s * n + t].size(), ng = o.homs_[t * n + u].size();
                table.resize(std::size_t(nf) * ng);
                for (int g = 0; g < ng; ++g)
                    for (int f = 0; f < nf; ++f) table[g * nf + f] = compose(u, t, s, f, g);
            }
    return o;
}

}  // namespace qk
