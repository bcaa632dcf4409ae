#include "oracles.hpp"

#include "vmodel/errors.hpp"
#include "vmodel/spin_analysis.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace vmodel;

namespace {

const GaussRational I = GaussRational::i();

GaussRational q(long a, long b = 1) { return GaussRational(Rational(a, b)); }

OneParamSubgroup worked_example() {
    Vector v1{q(1), I};
    Vector v2{q(1, 2), -(I * q(1, 2))};
    return {Matrix::from_columns(std::vector<Vector>{v1, v2}, 2), {1, -1}};
}

VertexModel example_model() {
    VertexModel h(2);
    h.set({1, 0}, GaussRational(1));
    h.set({0, 1}, I);
    return h;
}

std::vector<Graph> corpus(std::size_t max_degree) {
    std::vector<Graph> out;
    for (std::size_t v = 1; v <= 3; ++v)
        for (auto& g : enumerate_graphs(v, 3))
            if (g.max_degree() <= max_degree) out.push_back(std::move(g));
    Graph c;
    c.circles = 2;
    out.push_back(c);
    return out;
}

bool same_values(const VertexModel& a, const VertexModel& b, unsigned e) {
    for (const auto& alpha : exponents_up_to(a.n(), e))
        if (a.eval(alpha) != b.eval(alpha)) return false;
    return true;
}

}  // namespace

TEST_CASE("the worked one-parameter subgroup is orthogonal and matches its closed form") {
    auto lambda = worked_example();
    auto check = verify_one_param(lambda);
    CHECK(check.ok);
    CHECK(check.reason.empty());
    for (long t : {1L, 2L, -3L, 7L}) {
        Rational tr(t);
        Matrix m = one_param_at(lambda, tr);
        GaussRational scale = GaussRational(Rational(1) / (Rational(2) * tr));
        GaussRational t2 = GaussRational(tr * tr);
        CHECK(m(0, 0) == scale * (q(1) + t2));
        CHECK(m(0, 1) == scale * (I - I * t2));
        CHECK(m(1, 0) == scale * (-I + I * t2));
        CHECK(m(1, 1) == scale * (q(1) + t2));
    }
    CHECK(one_param_at(lambda, Rational(1)) == Matrix::identity(2));
    CHECK(one_param_at(lambda, Rational(2)) * one_param_at(lambda, Rational(3)) == one_param_at(lambda, Rational(6)));
}

TEST_CASE("malformed one-parameter data is rejected") {
    OneParamSubgroup identity_basis{Matrix::identity(2), {1, -1}};
    CHECK_FALSE(verify_one_param(identity_basis).ok);
    auto lambda = worked_example();
    lambda.weights = {1, 0};
    CHECK_FALSE(verify_one_param(lambda).ok);
    lambda.weights = {-1, 1};
    CHECK_FALSE(verify_one_param(lambda).ok);
    lambda.weights = {1};
    CHECK_FALSE(verify_one_param(lambda).ok);
    CHECK_THROWS_AS(one_param_at(worked_example(), Rational(0)), PreconditionError);
}

TEST_CASE("sample order and count") {
    auto lambda = worked_example();
    std::vector<Rational> samples{Rational(1), Rational(2), Rational(3), Rational(-1, 2), Rational(5)};
    CHECK(verify_one_param(lambda, samples).ok);
    std::reverse(samples.begin(), samples.end());
    CHECK(verify_one_param(lambda, samples).ok);
    std::vector<Rational> too_few{Rational(1), Rational(2), Rational(2)};
    CHECK_FALSE(verify_one_param(lambda, too_few).ok);
}

TEST_CASE("orbit closedness") {
    CHECK(orbit_closed({{q(1), q(0)}, {q(0), q(1)}}));
    CHECK_FALSE(orbit_closed({{q(1), I}}));
    CHECK(orbit_closed({}));
    CHECK(orbit_closed({{q(3, 5), q(4, 5)}, {q(-4, 5), q(3, 5)}}));
    std::vector<Vector> pts{{q(1), I, q(0)}, {q(0), q(0), q(1)}, {q(1), q(1), q(2)}};
    const bool closed = orbit_closed(pts);
    for (auto sign : {1, -1}) {
        Matrix g = signed_permutation_matrix({2, 0, 1}, {sign, 1, -1});
        std::vector<Vector> moved;
        for (const auto& p : pts) moved.push_back(g.apply(p));
        CHECK(orbit_closed(moved) == closed);
    }
}

TEST_CASE("the worked limit kills the example model") {
    auto lambda = worked_example();
    for (unsigned e = 1; e <= 3; ++e) {
        auto limit = apply_limit(lambda, example_model(), e);
        REQUIRE(limit.has_value());
        CHECK(limit->support().empty());
    }
}

TEST_CASE("weight zero is the identity") {
    auto lambda = worked_example();
    lambda.weights = {0, 0};
    CHECK(verify_one_param(lambda).ok);
    std::mt19937_64 rng(3);
    for (int t = 0; t < 5; ++t) {
        VertexModel h(2);
        for (const auto& alpha : exponents_up_to(2, 3)) h.set(alpha, GaussRational(static_cast<long>(rng() % 5) - 2));
        auto limit = apply_limit(lambda, h, 3);
        REQUIRE(limit.has_value());
        CHECK(same_values(*limit, h, 3));
    }
}

TEST_CASE("negative-weight coefficients mean no limit") {
    auto lambda = worked_example();
    // The point (1, -i) is the t^{-1} direction.
    auto h = VertexModel::spin(2, {{q(1), -I}}, {q(1)});
    CHECK_FALSE(apply_limit(lambda, h, 2).has_value());
}

TEST_CASE("the isotropic point collapses to evaluation at the origin") {
    auto h = VertexModel::spin(2, {{q(1), I}}, {q(1)});
    auto lambda = worked_example();
    for (unsigned e = 1; e <= 4; ++e) {
        auto limit = apply_limit(lambda, h, e);
        REQUIRE(limit.has_value());
        REQUIRE(limit->support().size() == 1);
        CHECK(limit->eval({0, 0}) == q(1));
        for (const auto& g : corpus(e)) CHECK(partition_function(*limit, g) == partition_function(h, g));
    }
}

TEST_CASE("degenerate witness examples") {
    auto w = degenerate_witness({{q(1), I}}, {q(1)});
    CHECK(w == worked_example());
    CHECK(degenerate_witness({{q(1), I}, {q(0), q(0)}}, {q(1), q(2)}) == w);
    CHECK_THROWS_AS(degenerate_witness({{q(1), q(0)}}, {q(1)}), PreconditionError);
}

TEST_CASE("witnesses verify and their limits keep the partition function") {
    std::vector<std::pair<std::vector<Vector>, std::vector<GaussRational>>> cases{
        {{{q(1), I}}, {q(2)}},
        {{{q(2), I * q(2)}}, {q(1, 3)}},
        {{{q(1), I, q(0)}}, {q(1)}},
        {{{q(1), I, q(0)}, {q(0), q(0), q(1)}}, {q(1), q(-1)}},
        {{{q(3), q(4), I * q(5)}}, {q(1)}},
        {{{q(1), I, q(0), q(0)}, {q(0), q(0), q(1), q(1)}}, {q(1), q(1)}},
        {{{q(1), I, q(0), q(0)}, {q(0), q(0), q(1), I}}, {q(1), I}},
    };
    for (const auto& [pts, ws] : cases) {
        CAPTURE(pts.size());
        CAPTURE(pts.front().size());
        REQUIRE_FALSE(orbit_closed(pts));
        auto lambda = degenerate_witness(pts, ws);
        CHECK(verify_one_param(lambda).ok);
        const std::size_t n = pts.front().size();
        auto h = VertexModel::spin(n, pts, ws);
        const unsigned e = 3;
        auto limit = apply_limit(lambda, h, e);
        REQUIRE(limit.has_value());
        for (const auto& g : corpus(e)) CHECK(partition_function(*limit, g) == partition_function(h, g));
    }
}

TEST_CASE("canonical bases") {
    auto basis = canonical_basis({{q(1), q(0)}, {q(0), q(1)}}, 2);
    REQUIRE(basis.size() == 2);
    Matrix b = Matrix::from_columns(basis, 2);
    Matrix j(2, 2);
    j(0, 1) = j(1, 0) = q(1);
    CHECK(b.transpose() * b == j);

    auto three = canonical_basis({{q(1), q(0), q(0)}, {q(0), q(1), q(0)}, {q(0), q(0), q(1)}}, 3);
    Matrix b3 = Matrix::from_columns(three, 3);
    Matrix j3(3, 3);
    for (std::size_t i = 0; i < 3; ++i) j3(i, 2 - i) = q(1);
    CHECK(b3.transpose() * b3 == j3);

    try {
        canonical_basis({{q(1), q(1), q(0)}}, 3);
        FAIL("expected an error");
    } catch (const PreconditionError& e) {
        CHECK(std::string(e.what()).find("square root of 2") != std::string::npos);
    }
}

TEST_CASE("normalization") {
    auto closed = normalize_spin(2, {{q(1), q(0)}, {q(0), q(1)}}, {q(1), q(1)}, 3);
    CHECK(closed.witnesses.empty());
    CHECK(closed.points.size() == 2);
    CHECK(closed.degree == 6);

    auto iso = normalize_spin(2, {{q(1), I}}, {q(1)}, 3);
    CHECK(iso.witnesses.size() == 1);
    REQUIRE(iso.model.support().size() == 1);
    CHECK(iso.model.eval({0, 0}) == q(1));
    auto original = VertexModel::spin(2, {{q(1), I}}, {q(1)});
    for (const auto& g : corpus(3)) CHECK(partition_function(iso.model, g) == partition_function(original, g));

    auto empty = normalize_spin(2, {}, {}, 2);
    CHECK(empty.model.support().empty());
    CHECK(empty.model.eval({0, 0}).is_zero());

    // Two isotropic points on the same line merge at the origin; weights add.
    auto merged = normalize_spin(2, {{q(1), I}, {q(2), I * q(2)}}, {q(1), q(3)}, 2);
    REQUIRE(merged.points.size() == 1);
    CHECK(merged.weights[0] == q(4));
    CHECK(orbit_closed(merged.points));

    auto cancelled = normalize_spin(2, {{q(1), I}, {q(2), I * q(2)}}, {q(1), q(-1)}, 2);
    CHECK(cancelled.points.empty());
    CHECK(cancelled.model.support().empty());
}

TEST_CASE("one-parameter files round-trip") {
    auto lambda = worked_example();
    CHECK(parse_one_param(format_one_param(lambda)) == lambda);
    CHECK_THROWS_AS(parse_one_param("oneparam n=2\n1 i\nweights 1 -1\n"), ParseError);
    CHECK_THROWS_AS(parse_one_param("oneparam n=2\n1 i\n1 -i\nweights 1 x\n"), ParseError);
    CHECK_THROWS_AS(parse_one_param("1 i\n"), ParseError);
}
