#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "fixtures.hpp"
#include "qk/structure.hpp"

using namespace qk;

namespace {

bool all_true(const StructureReport& r) {
    return r.total.value && r.cototal.value && r.tensored.value && r.cotensored.value &&
           r.conically_cocomplete.value && r.conically_complete.value && r.order_complete.value;
}

bool has_code(const std::vector<Diagnostic>& ds, const std::string& code) {
    return std::any_of(ds.begin(), ds.end(),
                       [&](const Diagnostic& d) { return d.code == code; });
}

std::string detail_of(const std::vector<Diagnostic>& ds, const std::string& code) {
    for (const auto& d : ds)
        if (d.code == code) return d.detail;
    return {};
}

}  // namespace

TEST_CASE("property deciders on poset categories") {
    auto q = fx::two_q();

    auto diamond = fx::poset_qcat(q, fx::diamond_poset());
    auto rd = structure_report(diamond);
    CHECK(all_true(rd));
    CHECK(rd.total.witness.empty());
    CHECK(rd.presheaf_count == 6);
    CHECK(rd.copresheaf_count == 6);

    auto anti = fx::poset_qcat(q, fx::antichain_poset(2));
    auto ra = structure_report(anti);
    CHECK(!ra.total.value);
    CHECK(ra.total.witness == "extent=* a0=0 a1=0");
    CHECK(!ra.cototal.value);
    CHECK(!ra.tensored.value);
    CHECK(ra.tensored.witness == "x=a0 t=* u=0");
    CHECK(!ra.cotensored.value);
    CHECK(!ra.conically_cocomplete.value);
    CHECK(!ra.conically_complete.value);
    CHECK(!ra.order_complete.value);
    // the two-atom family fails as well, not only the empty one
    CHECK(!supremum(validate_presheaf(anti, 0, {1, 1}).get()).has_value());

    CHECK(all_true(structure_report(fx::poset_qcat(q, fx::chain_poset(3)))));
    CHECK(all_true(structure_report(fx::poset_qcat(q, fx::m3_poset()))));
    CHECK(all_true(structure_report(fx::poset_qcat(q, fx::n5_poset()))));

    // a, b < c: a top but no bottom
    auto vee = fx::poset_qcat(q, fx::v_poset());
    auto rv = structure_report(vee);
    CHECK(!rv.total.value);
    CHECK(!rv.tensored.value);
    CHECK(rv.cotensored.value);
    CHECK(!rv.conically_cocomplete.value);
    CHECK(!rv.conically_complete.value);
    CHECK(rv.conically_complete.witness == "t=* family={a b}");
    CHECK(!rv.order_complete.value);

    auto benz = fx::poset_qcat(q, fx::benzene_poset());
    auto rb = structure_report(benz);
    CHECK(!rb.total.value);
    CHECK(!rb.order_complete.value);
}

TEST_CASE("tensors of the comma category over the idempotent monoid") {
    auto e = fx::comma_bmono_qcat(fx::q_b_mono());
    auto r = structure_report(e);
    // singleton cotensors exist along the cofibred side, but the empty
    // arrow has no tensor: no object maps into everything by all of {1, e}
    CHECK(!r.tensored.value);
    CHECK(r.tensored.witness == "x=1 t=* u={}");
    CHECK(!tensor(e, 0, 0, 0).has_value());
    CHECK(!r.total.value);
    CHECK(!r.order_complete.value);
}

TEST_CASE("eight characterizations of totality agree") {
    auto q = fx::two_q();
    auto fm = fx::fin_metric_q();
    std::vector<std::pair<QCatPtr, bool>> cases = {
        {fx::poset_qcat(q, fx::diamond_poset()), true},
        {fx::poset_qcat(q, fx::chain_poset(1)), true},
        {fx::poset_qcat(q, fx::antichain_poset(2)), false},
        {fx::poset_qcat(q, fx::v_poset()), false},
        {fx::poset_qcat(q, fx::benzene_poset()), false},
        {fx::poset_qcat(q, fx::m3_poset()), true},
        {fx::comma_bmono_qcat(fx::q_b_mono()), false},
        {quantale_self_category(fm).get(), true},
        {fx::metric_qcat(fm, {"p", "q"}, {{0, 1}, {1, 0}}), false},
        {validate_qcategory(q, {}, {}, {}).get(), false},
    };
    for (const auto& [e, want] : cases) {
        auto r = verify_totality_equivalences(e);
        CHECK(r.value == want);
        for (bool c : r.conditions) CHECK(c == want);
        CHECK(r.value == is_total(e).value);
    }
}

TEST_CASE("right adjoint search") {
    auto q = fx::two_q();
    auto diamond = fx::poset_qcat(q, fx::diamond_poset());
    auto chain2 = fx::poset_qcat(q, fx::chain_poset(2));

    auto idf = validate_qfunctor(diamond, diamond, {0, 1, 2, 3}).get();
    auto rid = has_right_adjoint(idf);
    CHECK(rid.preconditions_ok);
    CHECK(rid.exists);
    REQUIRE(rid.right.has_value());
    CHECK(functor_iso(*rid.right, idf));

    // join-preserving: only bot is sent to 0
    auto joiny = validate_qfunctor(diamond, chain2, {0, 1, 1, 1}).get();
    auto rj = has_right_adjoint(joiny);
    CHECK(rj.preconditions_ok);
    CHECK(rj.exists);
    REQUIRE(rj.right.has_value());
    CHECK(rj.right->map == std::vector<int>{0, 3});

    // collapsing both atoms to 0 loses the join of {a, b}
    auto lossy = validate_qfunctor(diamond, chain2, {0, 0, 0, 1}).get();
    auto rl = has_right_adjoint(lossy);
    CHECK(rl.preconditions_ok);
    CHECK(!rl.exists);
    CHECK(!rl.right.has_value());
    REQUIRE(has_code(rl.diagnostics, "JoinNotPreserved"));
    CHECK(detail_of(rl.diagnostics, "JoinNotPreserved") == "t=* family={a b} join=top");

    // preconditions fail on an antichain source; the search still answers
    auto anti = fx::poset_qcat(q, fx::antichain_poset(2));
    auto ida = validate_qfunctor(anti, anti, {0, 1}).get();
    auto ra = has_right_adjoint(ida);
    CHECK(!ra.preconditions_ok);
    CHECK(has_code(ra.diagnostics, "PreconditionFailed"));
    CHECK(ra.exists);
    REQUIRE(ra.right.has_value());
    CHECK(functor_iso(*ra.right, ida));

    auto embed = validate_qfunctor(anti, chain2, {0, 1}).get();
    auto re = has_right_adjoint(embed);
    CHECK(!re.preconditions_ok);
    CHECK(!re.exists);
}

TEST_CASE("injective extensions") {
    auto q = fx::two_q();
    auto diamond = fx::poset_qcat(q, fx::diamond_poset());
    auto anti = fx::poset_qcat(q, fx::antichain_poset(2));
    auto single = validate_qcategory(q, {"c"}, {0}, {{1}}).get();

    // one atom extended over the antichain: the missing point falls to bot
    auto f1 = validate_qfunctor(single, diamond, {1}).get();
    auto g1 = validate_qfunctor(single, anti, {0}).get();
    auto h1 = injective_extension(f1, g1);
    REQUIRE(h1.ok());
    CHECK(h1.get().map == std::vector<int>{1, 0});

    // identity leg: the extension is the extended functor itself
    auto chain3 = fx::poset_qcat(q, fx::chain_poset(3));
    auto f2 = validate_qfunctor(chain3, diamond, {0, 1, 3}).get();
    auto g2 = validate_qfunctor(chain3, chain3, {0, 1, 2}).get();
    auto h2 = injective_extension(f2, g2);
    REQUIRE(h2.ok());
    CHECK(functor_iso(h2.get(), f2));

    // the atoms extended from the antichain over the diamond fill the ends
    auto f3 = validate_qfunctor(anti, diamond, {1, 2}).get();
    auto g3 = validate_qfunctor(anti, diamond, {1, 2}).get();
    auto h3 = injective_extension(f3, g3);
    REQUIRE(h3.ok());
    CHECK(h3.get().map == std::vector<int>{0, 1, 2, 3});

    auto into_anti = validate_qfunctor(single, anti, {0}).get();
    auto bad_target = injective_extension(into_anti, g1);
    CHECK(!bad_target.ok());
    CHECK(has_code(bad_target.diagnostics, "NotTotal"));

    auto chain2 = fx::poset_qcat(q, fx::chain_poset(2));
    auto not_ff = validate_qfunctor(anti, chain2, {0, 1}).get();
    auto bad_leg = injective_extension(f3, not_ff);
    CHECK(!bad_leg.ok());
    CHECK(has_code(bad_leg.diagnostics, "NotFullyFaithful"));
}

TEST_CASE("extension problems along the Yoneda restriction") {
    auto q = fx::two_q();
    auto diamond = fx::poset_qcat(q, fx::diamond_poset());
    auto anti = fx::poset_qcat(q, fx::antichain_poset(2));

    auto low = validate_presheaf(diamond, 0, {1, 1, 0, 0}).get();
    auto hd = yoneda_extension(diamond, low);
    REQUIRE(hd.has_value());
    CHECK(hd->map == std::vector<int>{0, 1, 2, 3, 1});

    // every presheaf on a total category admits a retraction
    for (const auto& p : enumerate_presheaves(diamond))
        CHECK(yoneda_extension(diamond, p).has_value());

    auto both = validate_presheaf(anti, 0, {1, 1}).get();
    CHECK(!yoneda_extension(anti, both).has_value());
    auto none = validate_presheaf(anti, 0, {0, 0}).get();
    CHECK(!yoneda_extension(anti, none).has_value());
}

TEST_CASE("random corpus equivalence sweep") {
    Caps caps;
    Rng rng(caps.seed);
    auto q = fx::two_q();
    auto fm = fx::fin_metric_q();
    int total_cnt = 0, nontotal_cnt = 0;
    for (int i = 0; i < 40; ++i) {
        auto e = random_qcategory(q, 1 + static_cast<int>(rng.below(4)), rng);
        auto r = verify_totality_equivalences(e);
        (r.value ? total_cnt : nontotal_cnt) += 1;
    }
    for (int i = 0; i < 25; ++i) {
        auto e = random_qcategory(fm, 1 + static_cast<int>(rng.below(4)), rng);
        auto r = verify_totality_equivalences(e);
        (r.value ? total_cnt : nontotal_cnt) += 1;
    }
    CHECK(total_cnt > 0);
    CHECK(nontotal_cnt > 0);

    // failing presheaves of non-total instances admit no retraction either
    Rng rng2(7);
    int witnessed = 0;
    for (int i = 0; i < 200 && witnessed < 5; ++i) {
        auto e = random_qcategory(q, 2 + static_cast<int>(rng2.below(3)), rng2);
        for (const auto& p : enumerate_presheaves(e)) {
            if (supremum(p)) continue;
            CHECK(!yoneda_extension(e, p).has_value());
            ++witnessed;
            break;
        }
    }
    CHECK(witnessed == 5);
}
