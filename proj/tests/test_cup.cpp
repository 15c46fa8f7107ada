#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "cohom/cup.hpp"

using namespace cohom;

namespace {

FgAbGroup Z(std::size_t r = 1) { return FgAbGroup::free_group(r); }
FgAbGroup Zn(const Int& n) { return FgAbGroup::cyclic(n); }

SimplicialComplex fixture(const std::string& name) {
    return simplicial(*SpaceId::parse(name));
}

Cochain rand_cochain(const SimplicialComplex& x, long d, const Int& m, std::mt19937& rng) {
    std::uniform_int_distribution<int> coeff(-9, 9);
    std::vector<Int> values(x.simplices(static_cast<std::size_t>(d)).size());
    for (auto& v : values) v = coeff(rng);
    return Cochain::make(x, d, m, std::move(values));
}

// random cocycle: integer combination of generator representatives plus a
// coboundary
Cochain rand_cocycle(const GradedRing& ring, long d, std::mt19937& rng) {
    std::uniform_int_distribution<int> coeff(-4, 4);
    Cochain z = Cochain::zero(ring.complex(), d, ring.modulus());
    for (std::size_t j = 0; j < ring.group(d).gens(); ++j)
        z = add(z, scale(coeff(rng), ring.rep(d, j)));
    if (d > 0) z = add(z, coboundary(rand_cochain(ring.complex(), d - 1, ring.modulus(), rng)));
    return z;
}

const std::vector<std::string>& fixture_names() {
    static const std::vector<std::string> names = {"s1", "s2", "torus", "rp2", "klein"};
    return names;
}

}  // namespace

TEST_CASE("cochain construction validates and reduces") {
    auto x = fixture("torus");
    CHECK_THROWS_AS(Cochain::make(x, 1, 0, {}), std::invalid_argument);
    CHECK_THROWS_AS(Cochain::make(x, 0, 1, std::vector<Int>(7, 0)), std::invalid_argument);
    CHECK_THROWS_AS(Cochain::zero(x, -1, 0), std::invalid_argument);

    std::vector<Int> vals(7, 5);
    auto c = Cochain::make(x, 0, 3, vals);
    for (const auto& v : c.values) CHECK(v == 2);
    CHECK(Cochain::zero(x, 2, 0).is_zero());
    CHECK(!Cochain::unit(x, 0).is_zero());
    CHECK(Cochain::unit(x, 0).column().rows() == 7);

    auto a = Cochain::make(x, 0, 4, std::vector<Int>(7, 3));
    auto b = Cochain::make(x, 0, 4, std::vector<Int>(7, 2));
    for (const auto& v : add(a, b).values) CHECK(v == 1);
    for (const auto& v : sub(b, a).values) CHECK(v == 3);
    for (const auto& v : scale(6, a).values) CHECK(v == 2);
}

TEST_CASE("cochain coboundary matches the chain complex coboundary") {
    std::mt19937 rng(11);
    for (const auto& name : fixture_names()) {
        auto x = fixture(name);
        auto chain = x.chain_complex();
        for (const Int& m : {Int(0), Int(2), Int(12)})
            for (long d = 0; d <= static_cast<long>(x.dim()); ++d)
                for (int rep = 0; rep < 5; ++rep) {
                    auto a = rand_cochain(x, d, m, rng);
                    auto direct = coboundary(a).column();
                    auto via_matrix = chain.coboundary(d) * a.column();
                    REQUIRE(direct.rows() == via_matrix.rows());
                    for (std::size_t i = 0; i < direct.rows(); ++i) {
                        Int diff = direct.at(i, 0) - via_matrix.at(i, 0);
                        CHECK((m == 0 ? diff == 0 : diff % m == 0));
                    }
                }
    }
}

TEST_CASE("cup product rejects mismatched operands") {
    auto t = fixture("torus");
    auto r = fixture("rp2");
    auto a = Cochain::unit(t, 0);
    CHECK_THROWS_AS(aw_cup(a, Cochain::unit(r, 0)), std::invalid_argument);
    CHECK_THROWS_AS(aw_cup(a, Cochain::unit(t, 2)), std::invalid_argument);
    CHECK_THROWS_AS(add(a, Cochain::unit(t, 2)), std::invalid_argument);
    CHECK_THROWS_AS(add(a, rand_cochain(t, 1, 0, *(new std::mt19937(1)))), std::invalid_argument);
}

TEST_CASE("unit and zero laws hold exactly at cochain level") {
    std::mt19937 rng(13);
    for (const auto& name : fixture_names()) {
        auto x = fixture(name);
        for (const Int& m : {Int(0), Int(2), Int(12)}) {
            auto one = Cochain::unit(x, m);
            for (long d = 0; d <= static_cast<long>(x.dim()); ++d) {
                auto a = rand_cochain(x, d, m, rng);
                CHECK(aw_cup(one, a) == a);
                CHECK(aw_cup(a, one) == a);
                auto zero = Cochain::zero(x, 0, m);
                CHECK(aw_cup(a, zero).is_zero());
                CHECK(aw_cup(zero, a).is_zero());
            }
        }
    }
}

TEST_CASE("leibniz rule holds for random cochains") {
    std::mt19937 rng(17);
    for (const auto& name : fixture_names()) {
        auto x = fixture(name);
        long dim = static_cast<long>(x.dim());
        for (const Int& m : {Int(0), Int(2), Int(12)})
            for (int rep = 0; rep < 40; ++rep) {
                long p = std::uniform_int_distribution<long>(0, dim)(rng);
                long q = std::uniform_int_distribution<long>(0, dim - std::min(p, dim))(rng);
                auto a = rand_cochain(x, p, m, rng);
                auto b = rand_cochain(x, q, m, rng);
                auto lhs = coboundary(aw_cup(a, b));
                auto rhs = add(aw_cup(coboundary(a), b),
                               scale(p % 2 == 0 ? 1 : -1, aw_cup(a, coboundary(b))));
                CHECK(lhs == rhs);
            }
    }
}

TEST_CASE("cup product is associative and bilinear on cochains") {
    std::mt19937 rng(19);
    for (const auto& name : fixture_names()) {
        auto x = fixture(name);
        long dim = static_cast<long>(x.dim());
        for (const Int& m : {Int(0), Int(6)})
            for (int rep = 0; rep < 25; ++rep) {
                long p = std::uniform_int_distribution<long>(0, dim)(rng);
                long q = std::uniform_int_distribution<long>(0, dim - p)(rng);
                long r = std::uniform_int_distribution<long>(0, dim - p - q)(rng);
                auto a = rand_cochain(x, p, m, rng);
                auto a2 = rand_cochain(x, p, m, rng);
                auto b = rand_cochain(x, q, m, rng);
                auto b2 = rand_cochain(x, q, m, rng);
                auto c = rand_cochain(x, r, m, rng);
                CHECK(aw_cup(aw_cup(a, b), c) == aw_cup(a, aw_cup(b, c)));
                CHECK(aw_cup(add(a, a2), b) == add(aw_cup(a, b), aw_cup(a2, b)));
                CHECK(aw_cup(a, add(b, b2)) == add(aw_cup(a, b), aw_cup(a, b2)));
                CHECK(aw_cup(scale(3, a), b) == scale(3, aw_cup(a, b)));
            }
    }
}

TEST_CASE("sphere ring is z in degrees 0 and n with trivial products") {
    for (const auto& name : {"s1", "s2", "s3"}) {
        auto ring = cohomology_ring(fixture(name), 0);
        long n = ring.max_deg();
        CHECK(ring.group(0) == Z());
        CHECK(ring.group(n) == Z());
        for (long d = 1; d < n; ++d) CHECK(ring.group(d) == FgAbGroup::trivial());
        CHECK(ring.generators().size() == 2);
        CHECK(ring.generators()[0].label == "1");

        const auto& one = ring.generators()[0];
        const auto& top = ring.generators()[1];
        CHECK(ring.product(one, top) == GroupElement::generator(ring.group(n), 0));
        CHECK(ring.product(one, one) == GroupElement::generator(ring.group(0), 0));
        // products past the top degree vanish identically
        CHECK(ring.product(top, top).is_zero());
    }
}

TEST_CASE("ring generator representatives are honest cocycles") {
    for (const auto& name : fixture_names())
        for (const Int& m : {Int(0), Int(2), Int(4)}) {
            auto ring = cohomology_ring(fixture(name), m);
            for (const auto& gen : ring.generators()) {
                auto rep = ring.rep(gen);
                CHECK(is_cocycle(rep));
                CHECK(ring.coords(rep) ==
                      GroupElement::generator(ring.group(gen.degree), gen.index));
            }
        }
}

TEST_CASE("structure constants respect the graded commutativity sign") {
    for (const auto& name : fixture_names())
        for (const Int& m : {Int(0), Int(2), Int(3)}) {
            auto ring = cohomology_ring(fixture(name), m);
            for (const auto& a : ring.generators())
                for (const auto& b : ring.generators()) {
                    if (a.degree + b.degree > ring.max_deg()) continue;
                    int sign = (a.degree * b.degree) % 2 == 0 ? 1 : -1;
                    CHECK(ring.product(a, b) == scale(sign, ring.product(b, a)));
                }
        }
}

TEST_CASE("graded commutativity holds for random cocycle classes") {
    std::mt19937 rng(23);
    for (const auto& name : fixture_names())
        for (const Int& m : {Int(0), Int(2)}) {
            auto ring = cohomology_ring(fixture(name), m);
            for (int rep = 0; rep < 20; ++rep)
                for (long p = 0; p <= ring.max_deg(); ++p)
                    for (long q = 0; p + q <= ring.max_deg(); ++q) {
                        auto a = rand_cocycle(ring, p, rng);
                        auto b = rand_cocycle(ring, q, rng);
                        int sign = (p * q) % 2 == 0 ? 1 : -1;
                        CHECK(ring.coords(aw_cup(a, b)) ==
                              scale(sign, ring.coords(aw_cup(b, a))));
                    }
        }
}

TEST_CASE("projective plane mod 2 ring has a nonzero square") {
    auto ring = cohomology_ring(fixture("rp2"), 2);
    for (long d = 0; d <= 2; ++d) CHECK(ring.group(d) == Zn(2));
    const auto& x = ring.generators()[1];
    CHECK(x.degree == 1);
    CHECK(!ring.product(x, x).is_zero());
}

TEST_CASE("klein bottle mod 2 ring satisfies the classical relations") {
    auto ring = cohomology_ring(fixture("klein"), 2);
    CHECK(ring.group(1) == FgAbGroup{0, {2, 2}});
    CHECK(ring.group(2) == Zn(2));
    auto gamma = GroupElement::generator(ring.group(2), 0);

    // some basis alpha, beta of H^1 satisfies alpha^2 = gamma,
    // alpha beta = gamma, beta^2 = 0
    std::vector<Cochain> classes;
    std::vector<GroupElement> elems;
    for (const Int& c0 : {Int(0), Int(1)})
        for (const Int& c1 : {Int(0), Int(1)}) {
            if (c0 == 0 && c1 == 0) continue;
            auto z = add(scale(c0, ring.rep(1, 0)), scale(c1, ring.rep(1, 1)));
            classes.push_back(z);
            elems.push_back(ring.coords(z));
        }
    bool found = false;
    for (std::size_t i = 0; i < classes.size() && !found; ++i)
        for (std::size_t j = 0; j < classes.size() && !found; ++j) {
            if (elems[i] == elems[j]) continue;
            found = ring.coords(aw_cup(classes[i], classes[i])) == gamma &&
                    ring.coords(aw_cup(classes[i], classes[j])) == gamma &&
                    ring.coords(aw_cup(classes[j], classes[j])).is_zero();
        }
    CHECK(found);
}

TEST_CASE("torus ring is the exterior algebra on two degree one classes") {
    auto ring = cohomology_ring(fixture("torus"), 0);
    CHECK(ring.group(1) == Z(2));
    CHECK(ring.group(2) == Z());
    auto a = ring.rep(1, 0);
    auto b = ring.rep(1, 1);
    CHECK(ring.coords(aw_cup(a, a)).is_zero());
    CHECK(ring.coords(aw_cup(b, b)).is_zero());
    auto ab = ring.coords(aw_cup(a, b));
    CHECK(element_order(ab) == 0);
    // the product of the basis classes generates the top group
    auto gen = GroupElement::generator(ring.group(2), 0);
    CHECK((ab == gen || ab == neg(gen)));
}

TEST_CASE("ring rendering lists groups, generators, and products") {
    auto ring = cohomology_ring(fixture("rp2"), 2);
    auto text = ring.render();
    CHECK(text.find("coefficients Z/2") != std::string::npos);
    CHECK(text.find("H^0 = Z/2") != std::string::npos);
    CHECK(text.find("H^1 = Z/2") != std::string::npos);
    CHECK(text.find("products:") != std::string::npos);
    CHECK(text.find("x*x = ") != std::string::npos);
}

TEST_CASE("ring coordinate lookup validates its input") {
    auto ring = cohomology_ring(fixture("torus"), 0);
    CHECK_THROWS_AS(ring.coords(Cochain::unit(fixture("rp2"), 0)), std::invalid_argument);
    CHECK_THROWS_AS(ring.coords(Cochain::unit(fixture("torus"), 2)), std::invalid_argument);
    // a non-cocycle has no class
    std::vector<Int> vals(21, 0);
    vals[0] = 1;
    CHECK_THROWS_AS(ring.coords(Cochain::make(fixture("torus"), 1, 0, vals)),
                    std::invalid_argument);
    CHECK_THROWS_AS(cohomology_ring(fixture("torus"), 1), std::invalid_argument);
}

TEST_CASE("presentations parse, validate, and render canonically") {
    auto p = RingPresentation::parse("Z[x]/(x^2)");
    CHECK(p.modulus == 0);
    CHECK(p.gen_names == std::vector<std::string>{"x"});
    CHECK(p.gen_degrees == std::vector<long>{1});
    CHECK(p.relations.size() == 1);
    CHECK(p.str() == "Z[x]/(x^2)");

    auto q = RingPresentation::parse("Z/2[x,y]/(x^3,y^2,xy+x^2)");
    CHECK(q.modulus == 2);
    CHECK(q.str() == "Z/2[x,y]/(x^3,y^2,x*y+x^2)");
    CHECK(RingPresentation::parse(q.str()) == q);

    auto r = RingPresentation::parse("Z[x,y]/(2y,x^2,y^2,xy); deg y=2");
    CHECK(r.gen_degrees == std::vector<long>{1, 2});
    CHECK(r == RingPresentation::parse("Z[x:1,y:2]/(2y,x^2,y^2,xy)"));
    CHECK(r.relations[0].degree == 2);
    CHECK(r.relations[3].degree == 3);

    // reordering odd generators picks up the sign
    auto s = RingPresentation::parse("Z[x,y]/(yx)");
    CHECK(s.relations[0].terms.size() == 1);
    CHECK(s.relations[0].terms[0].coeff == -1);
    CHECK(s.relations[0].terms[0].exponents == std::vector<std::size_t>{1, 1});
    // even-degree generators commute without one
    auto t = RingPresentation::parse("Z[x,y]/(yx); deg y=2");
    CHECK(t.relations[0].terms[0].coeff == 1);

    CHECK(RingPresentation::parse("Z").gen_names.empty());
    CHECK(RingPresentation::parse("Z[]").gen_names.empty());

    for (const char* bad : {"Q[x]", "Z/1[x]", "Z[x,x]", "Z[x]/(x^2", "Z[x]/(3)",
                            "Z[x,y]/(x+y^2)", "Z[x]/(x^2); deg z=1", "Z[x] junk",
                            "Z[x]/(w)", "Z[x:0]", "Z[x]/()junk"})
        CHECK_THROWS_AS(RingPresentation::parse(bad), std::invalid_argument);
}

TEST_CASE("graded pieces of presented rings come out in canonical form") {
    auto sphere = RingPresentation::parse("Z[x]/(x^2); deg x=2");
    CHECK(sphere.graded_piece(0) == Z());
    CHECK(sphere.graded_piece(1) == FgAbGroup::trivial());
    CHECK(sphere.graded_piece(2) == Z());
    CHECK(sphere.graded_piece(4) == FgAbGroup::trivial());

    auto poly = RingPresentation::parse("Z/2[x]");
    for (long d = 0; d <= 5; ++d) CHECK(poly.graded_piece(d) == Zn(2));

    auto klein = RingPresentation::parse("Z[x,y]/(2y,x^2,y^2,xy); deg y=2");
    CHECK(klein.graded_piece(0) == Z());
    CHECK(klein.graded_piece(1) == Z());
    CHECK(klein.graded_piece(2) == Zn(2));
    CHECK(klein.graded_piece(3) == FgAbGroup::trivial());
    CHECK(klein.graded_piece(4) == FgAbGroup::trivial());

    auto exterior = RingPresentation::parse("Z[x,y]/(x^2,y^2)");
    CHECK(exterior.graded_piece(1) == Z(2));
    CHECK(exterior.graded_piece(2) == Z());
    CHECK(exterior.graded_piece(3) == FgAbGroup::trivial());

    // graded commutativity forces 2x^2 = 0 even without relations
    auto free_odd = RingPresentation::parse("Z[x]");
    CHECK(free_odd.graded_piece(2) == Zn(2));
}

TEST_CASE("claimed presentations match the computed rings") {
    struct Row {
        const char* space;
        Int modulus;
        const char* claim;
    };
    std::vector<Row> rows = {
        {"s1", 0, "Z[x]/(x^2)"},
        {"s2", 0, "Z[x]/(x^2); deg x=2"},
        {"s3", 0, "Z[x]/(x^2); deg x=3"},
        {"rp2", 0, "Z[x]/(2x,x^2); deg x=2"},
        {"rp2", 2, "Z/2[x]/(x^3)"},
        {"klein", 0, "Z[x,y]/(2y,x^2,y^2,xy); deg y=2"},
        {"klein", 2, "Z/2[x,y]/(x^3,y^2,xy+x^2)"},
        {"torus", 0, "Z[x,y]/(x^2,y^2)"},
        {"wedge:s2,s1,s1", 0, "Z[x,y,z]/(x^2,y^2,xy,xz,yz,z^2); deg z=2"},
    };
    for (const auto& row : rows) {
        CAPTURE(row.space);
        CAPTURE(row.claim);
        auto ring = cohomology_ring(fixture(row.space), row.modulus);
        auto witness = match_presentation(ring, RingPresentation::parse(row.claim));
        CHECK_MESSAGE(witness.matched, witness.detail);
        CHECK(witness.assignment.size() ==
              RingPresentation::parse(row.claim).gen_names.size());
    }
}

TEST_CASE("the wedge and torus rings are told apart") {
    auto wedge_ring = cohomology_ring(fixture("wedge:s2,s1,s1"), 0);
    auto torus_ring = cohomology_ring(fixture("torus"), 0);
    auto wedge_claim =
        RingPresentation::parse("Z[x,y,z]/(x^2,y^2,xy,xz,yz,z^2); deg z=2");
    auto torus_claim = RingPresentation::parse("Z[x,y]/(x^2,y^2)");

    CHECK(match_presentation(wedge_ring, wedge_claim).matched);
    CHECK(match_presentation(torus_ring, torus_claim).matched);
    CHECK(!match_presentation(wedge_ring, torus_claim).matched);
    CHECK(!match_presentation(torus_ring, wedge_claim).matched);
}

TEST_CASE("mismatched claims fail with a reason") {
    auto ring = cohomology_ring(fixture("s2"), 0);
    auto wrong_piece = match_presentation(ring, RingPresentation::parse("Z[x]/(x^2)"));
    CHECK(!wrong_piece.matched);
    CHECK(wrong_piece.detail.find("degree 1") != std::string::npos);

    CHECK_THROWS_AS(match_presentation(ring, RingPresentation::parse("Z/2[x]/(x^2)")),
                    std::invalid_argument);

    auto point = cohomology_ring(SimplicialComplex(1, {{0}}), 0);
    CHECK(match_presentation(point, RingPresentation::parse("Z")).matched);
}
