#include "vmodel/errors.hpp"
#include "vmodel/group_invariants.hpp"
#include "vmodel/vertex_model.hpp"

#include <doctest.h>

using namespace vmodel;

namespace {

Matrix swap2() {
    Matrix s(2, 2);
    s(0, 1) = GaussRational(1);
    s(1, 0) = GaussRational(1);
    return s;
}

Matrix scalar(std::size_t n, long c) {
    Matrix m = Matrix::identity(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = GaussRational(c);
    return m;
}

Vector vec(long a, long b) { return {GaussRational(a), GaussRational(b)}; }

std::vector<FiniteOrthogonalGroup> sample_groups() {
    std::vector<FiniteOrthogonalGroup> groups;
    groups.emplace_back(std::vector<Matrix>{Matrix::identity(2)});
    groups.emplace_back(std::vector<Matrix>{Matrix::identity(2), swap2()});
    groups.emplace_back(std::vector<Matrix>{Matrix::identity(2), scalar(2, -1)});
    groups.push_back(FiniteOrthogonalGroup::generated_by({signed_permutation_matrix({1, 0}, {1, 1}),
                                                          signed_permutation_matrix({0, 1}, {-1, 1})},
                                                         2));
    groups.push_back(FiniteOrthogonalGroup::generated_by({signed_permutation_matrix({1, 2, 0}, {1, 1, 1})}, 3));
    return groups;
}

}  // namespace

TEST_CASE("group validation") {
    CHECK_THROWS_AS(FiniteOrthogonalGroup(std::vector<Matrix>{}), PreconditionError);
    CHECK_THROWS_AS(FiniteOrthogonalGroup(std::vector<Matrix>{swap2()}), PreconditionError);
    CHECK_THROWS_AS(FiniteOrthogonalGroup(std::vector<Matrix>{Matrix::identity(2), scalar(2, 2)}), PreconditionError);
    Matrix rot = signed_permutation_matrix({1, 0}, {1, -1});
    CHECK_THROWS_AS(FiniteOrthogonalGroup(std::vector<Matrix>{Matrix::identity(2), rot}), PreconditionError);
    CHECK(FiniteOrthogonalGroup::generated_by({rot}, 2).order() == 4);
}

TEST_CASE("invariant dimension examples") {
    FiniteOrthogonalGroup trivial(std::vector<Matrix>{Matrix::identity(2)});
    CHECK(invariant_dim_finite(trivial, 3) == 8);
    FiniteOrthogonalGroup swap(std::vector<Matrix>{Matrix::identity(2), swap2()});
    CHECK(invariant_dim_finite(swap, 1) == 1);
    CHECK(invariant_dim_finite(swap, 2) == 2);
    CHECK(invariant_dim_finite(swap, 3) == 4);
    auto fixed = fixed_subspace(swap, 1);
    REQUIRE(fixed.size() == 1);
    CHECK(fixed[0].at(Colors{0}) == fixed[0].at(Colors{1}));
    FiniteOrthogonalGroup pm(std::vector<Matrix>{Matrix::identity(2), scalar(2, -1)});
    CHECK(fixed_subspace(pm, 1).empty());
    CHECK(fixed_subspace(pm, 3).empty());
}

TEST_CASE("character formula matches the averaging projector") {
    for (const auto& g : sample_groups())
        for (std::size_t k = 0; k <= 4; ++k) {
            auto basis = fixed_subspace(g, k);
            CHECK(invariant_dim_finite(g, k) == basis.size());
            for (const auto& t : basis)
                for (const auto& el : g.elements()) CHECK(apply_orthogonal(el, t) == t);
        }
}

TEST_CASE("Brauer dimension examples") {
    CHECK(brauer_invariant_dim(2, 2) == 1);
    CHECK(brauer_invariant_dim(2, 4) == 3);
    CHECK(brauer_invariant_dim(1, 4) == 1);
    CHECK(brauer_invariant_dim(3, 4) == 3);
    CHECK(brauer_invariant_dim(2, 6) == 10);
    CHECK(brauer_invariant_dim(3, 6) == 15);
    for (std::size_t n = 1; n <= 5; ++n) CHECK(brauer_invariant_dim(n, 3) == 0);
    CHECK(brauer_diagrams(6).size() == 15);
    Matrix expected(3, 3);
    for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t b = 0; b < 3; ++b) expected(a, b) = GaussRational(a == b ? 4 : 2);
    CHECK(brauer_gram(2, 4) == expected);
}

TEST_CASE("Brauer Gram entries are inner products of the diagram tensors") {
    for (std::size_t n = 1; n <= 3; ++n)
        for (std::size_t k : {2u, 4u}) {
            auto ds = brauer_diagrams(k);
            Matrix gram = brauer_gram(n, k);
            for (std::size_t a = 0; a < ds.size(); ++a)
                for (std::size_t b = 0; b < ds.size(); ++b)
                    CHECK(bilinear_form(brauer_tensor(n, k, ds[a]), brauer_tensor(n, k, ds[b])) == gram(a, b));
        }
}

TEST_CASE("O_1 is finite and matches the Brauer count") {
    Matrix one = Matrix::identity(1);
    FiniteOrthogonalGroup o1(std::vector<Matrix>{one, scalar(1, -1)});
    for (std::size_t k = 1; k <= 6; ++k) CHECK(invariant_dim_finite(o1, k) == brauer_invariant_dim(1, k));
}

TEST_CASE("spin stabilizer examples") {
    CHECK(spin_stabilizer({vec(1, 0), vec(0, 1)}, {GaussRational(1), GaussRational(1)}).order() == 2);
    CHECK(spin_stabilizer({vec(1, 0), vec(0, 1)}, {GaussRational(1), GaussRational(2)}).order() == 1);
    CHECK(spin_stabilizer({vec(1, 0), vec(-1, 0), vec(0, 1), vec(0, -1)}, std::vector<GaussRational>(4, GaussRational(1)))
              .order() == 8);
    CHECK(spin_stabilizer({vec(1, 0), vec(0, 2)}, {GaussRational(1), GaussRational(1)}).order() == 1);
    try {
        spin_stabilizer({{GaussRational(1), GaussRational::i()}}, {GaussRational(1)});
        FAIL("expected an error");
    } catch (const PreconditionError& e) {
        CHECK(std::string(e.what()).find("dimension 1 < n = 2") != std::string::npos);
    }
}

TEST_CASE("stabilizer elements fix the spin model") {
    std::vector<Vector> pts{vec(1, 0), vec(-1, 0), vec(0, 1), vec(0, -1)};
    std::vector<GaussRational> ws(4, GaussRational(1));
    auto h = VertexModel::spin(2, pts, ws);
    const auto group = spin_stabilizer(pts, ws);
    for (const auto& g : group.elements()) {
        std::vector<Vector> moved;
        for (const auto& p : pts) moved.push_back(g.apply(p));
        auto gh = VertexModel::spin(2, moved, ws);
        for (const auto& alpha : exponents_up_to(2, 4)) CHECK(gh.eval(alpha) == h.eval(alpha));
    }
}

TEST_CASE("group files round-trip") {
    for (const auto& g : sample_groups()) {
        auto back = parse_group(format_group(g));
        CHECK(back.elements() == g.elements());
    }
    CHECK_THROWS_AS(parse_group("group n=2\nmatrix\n1 0\n"), ParseError);
    CHECK_THROWS_AS(parse_group("group n=2\n1 0\n0 1\n"), ParseError);
    CHECK_THROWS_AS(parse_group("group n=2\nmatrix\n1 0\n0 2\n"), PreconditionError);
}
