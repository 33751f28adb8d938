#include <doctest.h>

#include "apta/composition.hpp"
#include "apta/consistency.hpp"
#include "apta/io.hpp"
#include "apta/isomorphism.hpp"
#include "apta/refinement.hpp"
#include "generators.hpp"

using namespace apta;

namespace {
std::string fixture_path(const std::string& name) {
    return std::string(APTA_FIXTURE_DIR) + "/" + name;
}

Model load_complete(const std::string& name) {
    return complete_edges(load_model(fixture_path(name)));
}

bool mutually_refine(const Model& a, const Model& b) {
    return apta_weak_refine(a, b).outcome == Outcome::Holds &&
           apta_weak_refine(b, a).outcome == Outcome::Holds;
}
}  // namespace

TEST_CASE("equalize for conjunction") {
    Model cl = load_complete("fig3_cl.apeca");
    auto [a, b] = equalize_for_conjunction(cl, cl);
    CHECK(serialize_model(a) == serialize_model(cl));

    // One missing action: a may family with empty constraints appears.
    Model small = parse_model(R"(apeca s {
      actions a;
      clocks x_a;
      aps;
      init location l0 { {} };
      edge l0 must a { 1 -> l0; };
    })");
    Model other = parse_model(R"(apeca s2 {
      actions a, b;
      clocks x_a, x_b;
      aps;
      init location m0 { {} };
      edge m0 must a { 1 -> m0; };
      edge m0 may b { 1 -> m0; };
    })");
    auto [x, y] = equalize_for_conjunction(small, other);
    CHECK(x.find_action("b") >= 0);
    CHECK(x.find_clock("x_b") >= 0);
    int added = 0;
    for (const Edge& e : x.edges)
        if (x.actions[e.action] == "b") {
            ++added;
            CHECK(e.modality == Modality::May);
            CHECK_FALSE(e.constraint.sat_nonempty());
        }
    CHECK(added == 1);
    CHECK(serialize_model(y) == serialize_model(other));

    // The conjunction verdict is unchanged under pre-equalized inputs.
    ComposeResult direct = conjoin(small, other);
    ComposeResult pre = conjoin(x, y);
    CHECK(isomorphic(direct.model, pre.model).holds);
}

TEST_CASE("conjunction needs action-deterministic operands") {
    Model bad = parse_model(R"(apeca nd {
      actions a;
      clocks x_a;
      aps;
      init location l0 { {} };
      location l1 { {} };
      edge l0 must a { p -> l0; q -> l1; } where { p <= 1/2 };
      edge l0 may a { p -> l0; q -> l1; } where { p >= 1/2 };
    })");
    Model ok = parse_model(R"(apeca d {
      actions a;
      clocks x_a;
      aps;
      init location l0 { {} };
      edge l0 must a { 1 -> l0; };
    })");
    try {
        conjoin(bad, ok);
        FAIL("expected NOT_ACTION_DETERMINISTIC");
    } catch (const Error& e) {
        CHECK(e.code == "NOT_ACTION_DETERMINISTIC");
    }
}

TEST_CASE("conjunction of the two clients carries the marginal system") {
    Model cl = load_complete("fig3_cl.apeca");
    Model cl2 = load_complete("fig7_cl2.apeca");
    ComposeResult r = conjoin(cl, cl2);
    CHECK(r.model.locations.size() == 12);
    CHECK(validate(r.model).empty());
    // The grant edge from (1, 1'') carries the six-variable system.
    int src = r.model.find_location("1|1''");
    REQUIRE(src >= 0);
    const Edge* grant = nullptr;
    for (const Edge& e : r.model.edges)
        if (e.source == src && r.model.actions[e.action] == "grant" &&
            e.constraint.sat_nonempty())
            grant = &e;
    REQUIRE(grant);
    REQUIRE(grant->support.size() == 6);
    // Vertices satisfy the marginal equalities and the factor bounds.
    for (const QVector& v : grant->constraint.vertices()) {
        Rational p1 = v[0] + v[1] + v[2];
        Rational q1 = v[0] + v[3], q2 = v[1] + v[4], q3 = v[2] + v[5];
        CHECK(p1 <= Rational(1, 3));
        CHECK(q1 <= Rational(1, 5));
        CHECK(q2 >= Rational(1, 3));
        CHECK(p1 + v[3] + v[4] + v[5] == Rational(1));
        CHECK(q1 + q2 + q3 == Rational(1));
    }
    // Membership in the conjunction equals membership of both marginals.
    QVector mu{Rational(1, 5), Rational(2, 15), Rational(0),
               Rational(0),    Rational(1, 3),  Rational(1, 3)};
    Rational p1 = mu[0] + mu[1] + mu[2];
    CHECK(p1 == Rational(1, 3));
    CHECK(grant->constraint.member(mu));
    QVector bad{Rational(1, 3), Rational(0), Rational(0),
                Rational(1, 3), Rational(0), Rational(1, 3)};
    CHECK_FALSE(grant->constraint.member(bad));  // q2 = 0 violates 1/3 <= q2
}

TEST_CASE("must paired with empty may yields an inconsistent product location") {
    // In cl, state 0 has a must get edge; in cl2, completion gives state 2'
    // only a (true, get, false) may edge. Their product is inconsistent and
    // pruning removes it.
    Model cl = load_complete("fig3_cl.apeca");
    Model cl2 = load_complete("fig7_cl2.apeca");
    ComposeResult r = conjoin(cl, cl2);
    int bad = r.model.find_location("0|2'");
    REQUIRE(bad >= 0);
    CHECK_FALSE(location_consistent(r.model, bad));
    // The first client requires grant capability one get after the start, the
    // second forbids it there, so the whole conjunction prunes away: both
    // specifications together admit no implementation.
    Model pruned = prune_star(r.model);
    CHECK(pruned.is_empty());
    CHECK(apta_weak_refine(pruned, cl).outcome == Outcome::Holds);
}

TEST_CASE("conjunction with itself stays equivalent for deterministic consistent models") {
    Model cl = load_complete("fig3_cl.apeca");
    ComposeResult r = conjoin(cl, cl);
    Model pruned = prune_star(r.model);
    CHECK(mutually_refine(pruned, cl));
}

TEST_CASE("equalize for parallel adds point self-loops") {
    Model a = parse_model(R"(apeca a1 {
      actions a;
      clocks x_a;
      aps;
      init location l0 { {} };
      location l1 { {} };
      edge l0 must a { 1 -> l1; };
      edge l1 may a { 1 -> l1; };
    })");
    Model b = parse_model(R"(apeca b1 {
      actions b;
      clocks x_b;
      aps;
      init location m0 { {} };
      edge m0 must b { 1 -> m0; };
    })");
    auto [x, y] = equalize_for_parallel(a, b);
    int loops = 0;
    for (const Edge& e : x.edges)
        if (x.actions[e.action] == "b") {
            ++loops;
            CHECK(e.modality == Modality::Must);
            CHECK(e.guard.is_true());
            REQUIRE(e.support.size() == 1);
            CHECK(e.support[0].target == e.source);
            CHECK(e.constraint.as_point());
        }
    CHECK(loops == 2);  // one per location of a

    auto [p, q] = equalize_for_parallel(x, y);
    CHECK(serialize_model(p) == serialize_model(x));
    CHECK(serialize_model(q) == serialize_model(y));

    // Interleaving on a hand-built pair: the product of two single-location
    // single-private-action models has both self-loops.
    ComposeResult comp = compose_parallel(
        parse_model(R"(apeca u { actions a; clocks x_a; aps; init location l { {} };
          edge l must a { 1 -> l; }; })"),
        parse_model(R"(apeca v { actions b; clocks x_b; aps; init location m { {} };
          edge m must b { 1 -> m; }; })"));
    CHECK(comp.model.locations.size() == 1);
    CHECK(comp.model.edges.size() == 2);
    for (const Edge& e : comp.model.edges) {
        CHECK(e.modality == Modality::Must);
        CHECK(e.constraint.as_point());
    }
}

TEST_CASE("parallel composition of client and access controller") {
    Model cl = load_complete("fig3_cl.apeca");
    Model acc = load_complete("fig3_acc.apeca");
    ComposeResult r = compose_parallel(cl, acc);
    CHECK(r.model.locations.size() == 6);
    CHECK(validate(r.model).empty());
    // The grant pair from (1, 1') carries the tensor constraint.
    int src = r.model.find_location("1|1'");
    REQUIRE(src >= 0);
    const Edge* grant = nullptr;
    for (const Edge& e : r.model.edges)
        if (e.source == src && r.model.actions[e.action] == "grant" && e.constraint.is_product() &&
            e.constraint.sat_nonempty())
            grant = &e;
    REQUIRE(grant);
    REQUIRE(grant->support.size() == 4);
    // p1 = 1/4 and p3 = 1/2 induce (1/8, 1/8, 3/8, 3/8).
    QVector mu{Rational(1, 8), Rational(1, 8), Rational(3, 8), Rational(3, 8)};
    CHECK(grant->constraint.member(mu));
    // A non-product distribution with the same marginals is rejected.
    QVector bad{Rational(1, 4), Rational(0), Rational(1, 4), Rational(1, 2)};
    CHECK_FALSE(grant->constraint.member(bad));
    // Guard is the conjunction x_get <= 4 of the factors.
    CHECK(grant->guard.text(r.model.clocks) == "x_get <= 4");
}

TEST_CASE("ap overlap is rejected") {
    Model a = parse_model(R"(apeca a1 { actions a; clocks x_a; aps p;
      init location l { {p} }; edge l must a { 1 -> l; }; })");
    Model b = parse_model(R"(apeca b1 { actions a; clocks x_a; aps p;
      init location m { {p} }; edge m must a { 1 -> m; }; })");
    try {
        compose_parallel(a, b);
        FAIL("expected AP_OVERLAP");
    } catch (const Error& e) {
        CHECK(e.code == "AP_OVERLAP");
    }
}

TEST_CASE("modality meet on edge pairs") {
    Model may_model = parse_model(R"(apeca mm { actions a; clocks x_a; aps;
      init location l { {} }; edge l may a { 1 -> l; }; })");
    Model must_model = parse_model(R"(apeca nn { actions a; clocks x_a; aps;
      init location m { {} }; edge m must a { 1 -> m; }; })");
    ComposeResult r = compose_parallel(may_model, must_model);
    REQUIRE(r.model.edges.size() == 1);
    CHECK(r.model.edges[0].modality == Modality::May);
    ComposeResult rr = compose_parallel(must_model, must_model);
    REQUIRE(rr.model.edges.size() == 1);
    CHECK(rr.model.edges[0].modality == Modality::Must);
}

TEST_CASE("composing with a unit keeps the other factor") {
    Model cl = load_complete("fig3_cl.apeca");
    Model unit = parse_model(R"(apeca unit {
      actions get, grant, extra;
      clocks x_get, x_grant, x_extra;
      aps;
      init location u { {} };
      edge u must get { 1 -> u; };
      edge u must grant { 1 -> u; };
      edge u must extra { 1 -> u; };
    })");
    ComposeResult r = compose_parallel(cl, unit);
    CHECK(mutually_refine(r.model, cl));
}

TEST_CASE("isomorphism basics") {
    Model cl = load_model(fixture_path("fig3_cl.apeca"));
    CHECK(isomorphic(cl, cl).holds);
    Model renamed = cl;
    renamed.locations = {"s0", "s1", "s2"};
    IsoResult iso = isomorphic(cl, renamed);
    REQUIRE(iso.holds);
    CHECK(iso.mapping[0] == 0);
    Model different = cl;
    different.edges[0].modality = Modality::May;
    CHECK_FALSE(isomorphic(cl, different).holds);
}

TEST_CASE("region construction commutes with conjunction on generated pairs") {
    gen::Rng rng(777);
    int done = 0, inconclusive = 0;
    for (int trial = 0; trial < 60 && done < 25; ++trial) {
        Model e1 = gen::random_apeca(rng, 2);
        Model e2 = gen::random_apeca(rng, 2);
        ComposeResult conj = [&]() {
            try {
                return conjoin(e1, e2);
            } catch (const Error&) {
                return ComposeResult{Model::empty_spec(), {}};
            }
        }();
        if (conj.model.is_empty()) continue;
        RegionContext ctx = make_context({&conj.model, &e1, &e2});
        RegionAutomaton lhs = build_region(conj.model, ctx);
        RegionAutomaton rhs = conjoin_region(build_region(e1, ctx), build_region(e2, ctx));
        RefinementResult fwd = weak_refine(lhs, rhs);
        RefinementResult bwd = weak_refine(rhs, lhs);
        if (fwd.outcome == Outcome::Inconclusive || bwd.outcome == Outcome::Inconclusive) {
            ++inconclusive;
            continue;
        }
        CHECK(fwd.outcome == Outcome::Holds);
        CHECK(bwd.outcome == Outcome::Holds);
        ++done;
    }
    CHECK(done >= 20);
    CHECK(inconclusive <= 2);
}

TEST_CASE("region construction commutes with parallel composition on generated pairs") {
    gen::Rng rng(888);
    int done = 0, inconclusive = 0;
    for (int trial = 0; trial < 60 && done < 25; ++trial) {
        Model e1 = gen::random_apeca(rng, 2, "p");
        Model e2 = gen::random_apeca(rng, 2, "q");
        ComposeResult par = compose_parallel(e1, e2);
        RegionContext ctx = make_context({&par.model, &e1, &e2});
        RegionAutomaton lhs = build_region(par.model, ctx);
        RegionAutomaton rhs = compose_region(build_region(e1, ctx), build_region(e2, ctx));
        RefinementResult fwd = weak_refine(lhs, rhs);
        RefinementResult bwd = weak_refine(rhs, lhs);
        if (fwd.outcome == Outcome::Inconclusive || bwd.outcome == Outcome::Inconclusive) {
            ++inconclusive;
            continue;
        }
        CHECK(fwd.outcome == Outcome::Holds);
        CHECK(bwd.outcome == Outcome::Holds);
        ++done;
    }
    CHECK(done >= 20);
    CHECK(inconclusive <= 2);
}
