#include "fixtures.hpp"

namespace qk::fx {

QuantaloidPtr two_q() {
    auto lat = validate_lattice({"0", "1"}, {{0, 1}}).get();
    std::vector<std::vector<int>> tensor{{0, 0}, {0, 1}};
    return std::make_shared<const Quantaloid>(Quantaloid::from_quantale(lat, tensor, 1).get());
}

const char* const fin_metric_names[4] = {"0", "1", "2", "inf"};

QuantaloidPtr fin_metric_q() {
    // lattice order is reverse numeric size: inf <= 2 <= 1 <= 0
    auto lat = validate_lattice({"0", "1", "2", "inf"}, {{3, 2}, {2, 1}, {1, 0}}).get();
    const int INF = 3;
    std::vector<std::vector<int>> tensor(4, std::vector<int>(4));
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            tensor[a][b] = (a == INF || b == INF || a + b > 2) ? INF : a + b;
    return std::make_shared<const Quantaloid>(Quantaloid::from_quantale(lat, tensor, 0).get());
}

FiniteCategory b_mono_category() {
    RawCategory raw;
    raw.objects = {"*"};
    raw.mor_names = {"1", "e"};
    raw.mor_src = {0, 0};
    raw.mor_dst = {0, 0};
    raw.ids = {0};
    raw.triples = {{1, 1, 1}};  // e . e = e
    return validate_category(raw).get();
}

QuantaloidPtr q_b_mono() {
    return std::make_shared<const Quantaloid>(Quantaloid::free_over(b_mono_category()));
}

Val mor_mask(const FiniteCategory& b, std::initializer_list<const char*> names) {
    Val mask = 0;
    for (const char* name : names) mask |= Val{1} << b.hom_pos[b.mor_index(name)];
    return mask;
}

Poset chain_poset(int n) {
    std::vector<std::string> elems;
    std::vector<std::pair<int, int>> le;
    for (int i = 0; i < n; ++i) {
        elems.push_back(std::to_string(i));
        if (i > 0) le.push_back({i - 1, i});
    }
    return validate_poset(elems, le).get();
}

Poset antichain_poset(int n) {
    std::vector<std::string> elems;
    for (int i = 0; i < n; ++i) elems.push_back("a" + std::to_string(i));
    return validate_poset(elems, {}).get();
}

Poset diamond_poset() {
    return validate_poset({"bot", "a", "b", "top"}, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}).get();
}

Poset v_poset() { return validate_poset({"a", "b", "c"}, {{0, 2}, {1, 2}}).get(); }

Poset benzene_poset() {
    std::vector<std::pair<int, int>> le;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j) le.push_back({i, 3 + j});
    return validate_poset({"x0", "x1", "x2", "y0", "y1", "y2"}, le).get();
}

Poset m3_poset() {
    return validate_poset({"bot", "a", "b", "c", "top"},
                          {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {3, 4}})
        .get();
}

Poset n5_poset() {
    return validate_poset({"bot", "a", "b", "c", "top"}, {{0, 1}, {1, 3}, {3, 4}, {0, 2}, {2, 4}})
        .get();
}

Poset cube_poset() {
    std::vector<std::string> elems;
    std::vector<std::pair<int, int>> le;
    for (int s = 0; s < 8; ++s) elems.push_back("s" + std::to_string(s));
    for (int s = 0; s < 8; ++s)
        for (int t = 0; t < 8; ++t)
            if ((s & t) == s && s != t) le.push_back({s, t});
    return validate_poset(elems, le).get();
}

FiniteLattice diamond_lattice() { return validate_lattice(diamond_poset()).get(); }

QCatPtr poset_qcat(QuantaloidPtr q, const Poset& p) {
    const Val bot = q->bottom(0, 0), top = q->top(0, 0);
    std::vector<std::vector<Val>> hom(p.size(), std::vector<Val>(p.size()));
    for (int x = 0; x < p.size(); ++x)
        for (int y = 0; y < p.size(); ++y) hom[x][y] = p.le[x][y] ? top : bot;
    return validate_qcategory(std::move(q), p.elems, std::vector<int>(p.size(), 0), std::move(hom))
        .get();
}

QCatPtr metric_qcat(QuantaloidPtr q, std::vector<std::string> names,
                    std::vector<std::vector<Val>> dist) {
    std::vector<int> extent(names.size(), 0);
    return validate_qcategory(std::move(q), std::move(names), std::move(extent), std::move(dist))
        .get();
}

QCatPtr comma_bmono_qcat(QuantaloidPtr qb) {
    const auto& b = qb->base();
    std::vector<std::string> objects = {"1", "e"};
    std::vector<int> obj_mor = {b.mor_index("1"), b.mor_index("e")};
    std::vector<std::vector<Val>> hom(2, std::vector<Val>(2, 0));
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int h : b.hom(0, 0))
                if (b.compose(h, obj_mor[x]) == obj_mor[y]) hom[x][y] |= Val{1} << b.hom_pos[h];
    return validate_qcategory(std::move(qb), std::move(objects), {0, 0}, std::move(hom)).get();
}

}  // namespace qk::fx
