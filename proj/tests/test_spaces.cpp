#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>

#include <set>
#include <string>
#include <vector>

#include "cohom/spaces.hpp"

using namespace cohom;

namespace {

FgAbGroup Z(std::size_t r = 1) { return FgAbGroup::free_group(r); }
FgAbGroup Zn(const Int& n) { return FgAbGroup::cyclic(n); }

SpaceId id_of(const std::string& text) {
    auto id = SpaceId::parse(text);
    REQUIRE_MESSAGE(id.has_value(), text);
    return *id;
}

std::vector<FgAbGroup> homology_profile(const CellComplex& x) {
    std::vector<FgAbGroup> out;
    for (long n = 0; n <= static_cast<long>(x.dim()); ++n) out.push_back(homology(x, n));
    return out;
}

}  // namespace

TEST_CASE("space names parse and render back to themselves") {
    for (const char* text : {"s0", "s1", "s4", "s12", "torus", "klein", "cp2", "rp2", "rp3",
                             "rpN:5", "wedge:s2,s1,s1", "wedge:torus,rp2", "susp:torus",
                             "susp:susp:s0", "wedge:s1,susp:s1"}) {
        auto id = SpaceId::parse(text);
        REQUIRE_MESSAGE(id.has_value(), text);
        CHECK(id->str() == text);
        CHECK(SpaceId::parse(id->str()) == id);
    }
    CHECK(SpaceId::parse("rpN:4")->kind == SpaceId::Kind::Rp);
    CHECK(SpaceId::parse("rpN:4")->param == 4);
    CHECK(SpaceId::parse("rp4") == SpaceId::parse("rpN:4"));
    CHECK(SpaceId::parse("rp4")->str() == "rpN:4");
    CHECK(SpaceId::sphere(2) == id_of("s2"));
    CHECK(id_of("wedge:s2,s1").parts == std::vector<SpaceId>{SpaceId::sphere(2),
                                                             SpaceId::sphere(1)});
}

TEST_CASE("malformed space names are rejected") {
    for (const char* text : {"", "s", "sx", "s-1", "sphere", "rp", "rpN:", "rpN:x", "torus2",
                             "wedge:", "wedge:s1,", "wedge:,s1", "wedge:bogus", "susp:",
                             "susp:nope", "s99999"})
        CHECK_MESSAGE(!SpaceId::parse(text).has_value(), text);
}

TEST_CASE("cellular models have the advertised cells and homology") {
    CHECK(cellular(id_of("s2")).cell_counts() == std::vector<std::size_t>{1, 0, 1});
    CHECK(cellular(id_of("s0")).cell_counts() == std::vector<std::size_t>{2});

    auto rp3 = cellular(id_of("rp3"));
    CHECK(rp3.cell_counts() == std::vector<std::size_t>{1, 1, 1, 1});
    CHECK(rp3.boundary(1).at(0, 0) == 0);
    CHECK(rp3.boundary(2).at(0, 0) == 2);
    CHECK(rp3.boundary(3).at(0, 0) == 0);
    CHECK(homology_profile(rp3) == std::vector<FgAbGroup>{Z(), Zn(2), FgAbGroup::trivial(), Z()});

    auto w = cellular(id_of("wedge:s2,s1,s1"));
    CHECK(w.cell_counts() == std::vector<std::size_t>{1, 2, 1});
    CHECK(homology_profile(w) == std::vector<FgAbGroup>{Z(), Z(2), Z()});

    CHECK(homology_profile(cellular(id_of("susp:s1"))) ==
          homology_profile(cellular(id_of("s2"))));
    CHECK(homology_profile(cellular(id_of("susp:torus"))) ==
          std::vector<FgAbGroup>{Z(), FgAbGroup::trivial(), Z(2), Z()});
    CHECK(homology_profile(cellular(id_of("cp2"))) ==
          std::vector<FgAbGroup>{Z(), FgAbGroup::trivial(), Z(), FgAbGroup::trivial(), Z()});
    for (const auto& id : catalog()) CHECK(cellular(id).basepoint().has_value());
}

TEST_CASE("simplicial fixtures carry the expected combinatorics") {
    auto torus = simplicial(id_of("torus"));
    CHECK(torus.vertices() == 7);
    CHECK(torus.simplices(0).size() == 7);
    CHECK(torus.simplices(1).size() == 21);
    CHECK(torus.simplices(2).size() == 14);
    CHECK(torus.chain_complex().euler_characteristic() == 0);

    auto rp2 = simplicial(id_of("rp2"));
    CHECK(rp2.vertices() == 6);
    CHECK(rp2.simplices(1).size() == 15);
    CHECK(rp2.chain_complex().euler_characteristic() == 1);

    auto klein = simplicial(id_of("klein"));
    CHECK(klein.vertices() == 9);
    CHECK(klein.simplices(2).size() == 18);
    CHECK(klein.chain_complex().euler_characteristic() == 0);

    auto s3 = simplicial(id_of("s3"));
    CHECK(s3.vertices() == 5);
    CHECK(s3.simplices(3).size() == 5);
    CHECK(s3.dim() == 3);

    // every triangulated surface here: each edge lies in exactly two triangles
    for (const auto& name : {"torus", "rp2", "klein", "s2"}) {
        auto x = simplicial(id_of(name));
        for (const auto& e : x.simplices(1)) {
            std::size_t count = 0;
            for (const auto& t : x.simplices(2))
                count += std::includes(t.begin(), t.end(), e.begin(), e.end()) ? 1 : 0;
            CHECK_MESSAGE(count == 2, name);
        }
    }
}

TEST_CASE("simplicial and cellular models agree on homology") {
    for (const auto& id : catalog()) {
        if (!has_simplicial(id)) continue;
        auto derived = simplicial(id).chain_complex();
        auto model = cellular(id);
        long top = static_cast<long>(std::max(derived.dim(), model.dim()));
        for (long n = 0; n <= top; ++n)
            CHECK_MESSAGE(homology(derived, n) == homology(model, n),
                          id.str(), " degree ", n);
    }
}

TEST_CASE("fixture support is limited to the embedded triangulations") {
    CHECK(has_simplicial(id_of("s3")));
    CHECK(has_simplicial(id_of("wedge:s2,s1,s1")));
    CHECK(has_simplicial(id_of("wedge:torus,rp2")));
    CHECK(!has_simplicial(id_of("s4")));
    CHECK(!has_simplicial(id_of("cp2")));
    CHECK(!has_simplicial(id_of("rp3")));
    CHECK(!has_simplicial(id_of("susp:s1")));
    CHECK(!has_simplicial(id_of("wedge:s1,cp2")));
    CHECK_THROWS_AS(simplicial(id_of("cp2")), std::invalid_argument);
    CHECK_THROWS_AS(simplicial(id_of("s4")), std::invalid_argument);
}

TEST_CASE("wedge fixtures glue at a single shared vertex") {
    auto w = simplicial(id_of("wedge:s2,s1,s1"));
    CHECK(w.vertices() == 1 + 3 + 2 + 2);
    CHECK(homology_profile(w.chain_complex()) == std::vector<FgAbGroup>{Z(), Z(2), Z()});

    auto v = simplicial(id_of("wedge:torus,rp2"));
    CHECK(v.vertices() == 1 + 6 + 5);
    CHECK(homology_profile(v.chain_complex()) ==
          std::vector<FgAbGroup>{Z(), FgAbGroup{2, {2}}, Z()});
}

TEST_CASE("chain complexes of subcomplexes keep ambient vertex labels") {
    // a subcomplex may skip vertex labels entirely
    SimplicialComplex sub(5, {{1, 3}, {3, 4}});
    CHECK(sub.simplices(0).size() == 3);
    CHECK(sub.index_of({0}) == std::nullopt);
    CHECK(sub.index_of({1}) == 0);
    CHECK(sub.index_of({4, 3}) == 1);
    auto chain = sub.chain_complex(1);
    CHECK(chain.cell_counts() == std::vector<std::size_t>{3, 2});
    CHECK(chain.basepoint() == 0);
    CHECK_THROWS_AS(sub.chain_complex(0), std::invalid_argument);
    CHECK_THROWS_AS(sub.chain_complex(7), std::invalid_argument);
}

TEST_CASE("simplicial complex construction validates facets") {
    CHECK_THROWS_AS(SimplicialComplex(3, {{0, 3}}), std::invalid_argument);
    CHECK_THROWS_AS(SimplicialComplex(3, {{1, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(SimplicialComplex(3, {{}}), std::invalid_argument);
    // facets are sorted and faces deduplicated
    SimplicialComplex x(3, {{2, 0}, {0, 1}, {1, 2}});
    CHECK(x.facets()[0] == std::vector<std::size_t>{0, 2});
    CHECK(x.simplices(0).size() == 3);
    CHECK(x.simplices(1).size() == 3);
}

TEST_CASE("restriction matrices pick out subcomplex coordinates") {
    auto cover = covering_pair(id_of("torus"));
    for (std::size_t d = 0; d <= 2; ++d) {
        auto r = restriction_matrix(cover.total, cover.a, d);
        CHECK(r.rows() == cover.a.simplices(d).size());
        CHECK(r.cols() == cover.total.simplices(d).size());
        for (std::size_t i = 0; i < r.rows(); ++i) {
            Int row_sum = 0;
            for (std::size_t j = 0; j < r.cols(); ++j) {
                CHECK((r.at(i, j) == 0 || r.at(i, j) == 1));
                row_sum += r.at(i, j);
            }
            CHECK(row_sum == 1);
        }
    }
    // restricting to the complex itself is the identity
    auto full = restriction_matrix(cover.total, cover.total, 1);
    CHECK(full == IntMatrix::identity(cover.total.simplices(1).size()));
    SimplicialComplex stray(7, {{4, 5}});
    CHECK_THROWS_AS(restriction_matrix(cover.a, stray, 1), std::invalid_argument);
}

TEST_CASE("intersections keep exactly the shared simplices") {
    SimplicialComplex a(4, {{0, 1, 2}, {0, 3}});
    SimplicialComplex b(4, {{0, 1, 2}, {1, 3}});
    auto inter = intersect_complexes(a, b);
    CHECK(inter.index_of({0, 1, 2}).has_value());
    CHECK(inter.facets().size() == 2);  // the triangle and the stray vertex 3
    CHECK(inter.index_of({3}).has_value());
    CHECK(!inter.index_of({0, 3}).has_value());
    CHECK(!inter.index_of({1, 3}).has_value());
}

TEST_CASE("covering pairs cover the space and intersect as expected") {
    struct Expected {
        const char* name;
        std::vector<FgAbGroup> inter_homology;
    };
    // intersections: s1 -> two points, s2 -> circle, s3 -> 2-sphere,
    // torus -> two disjoint circles, rp2 and klein -> one circle
    std::vector<Expected> table = {
        {"s1", {Z(2)}},
        {"s2", {Z(), Z()}},
        {"s3", {Z(), FgAbGroup::trivial(), Z()}},
        {"torus", {Z(2), Z(2)}},
        {"rp2", {Z(), Z()}},
        {"klein", {Z(), Z()}},
    };
    for (const auto& row : table) {
        auto cover = covering_pair(id_of(row.name));
        CAPTURE(row.name);

        std::set<std::vector<std::size_t>> facets(cover.total.facets().begin(),
                                                  cover.total.facets().end());
        for (const auto& f : cover.a.facets()) CHECK(facets.count(f) == 1);
        for (const auto& f : cover.b.facets()) CHECK(facets.count(f) == 1);
        std::set<std::vector<std::size_t>> covered(cover.a.facets().begin(),
                                                   cover.a.facets().end());
        covered.insert(cover.b.facets().begin(), cover.b.facets().end());
        CHECK(covered == facets);

        CHECK(homology_profile(cover.intersection.chain_complex()) == row.inter_homology);
        CHECK(cover.a.index_of({cover.basepoint_vertex}).has_value());
        CHECK(cover.b.index_of({cover.basepoint_vertex}).has_value());
        CHECK(cover.intersection.index_of({cover.basepoint_vertex}).has_value());

        CHECK(intersect_complexes(cover.a, cover.b) == cover.intersection);
    }
    CHECK_THROWS_AS(covering_pair(id_of("cp2")), std::invalid_argument);
    CHECK_THROWS_AS(covering_pair(id_of("s0")), std::invalid_argument);
}

TEST_CASE("covering pieces are homotopically simple where the sequences need it") {
    // disk-like pieces: star covers used for rp2 and klein
    for (const auto& name : {"rp2", "klein"}) {
        auto cover = covering_pair(id_of(name));
        CAPTURE(name);
        auto star = cover.a.chain_complex();
        CHECK(homology(star, 0) == Z());
        CHECK(homology(star, 1) == FgAbGroup::trivial());
        CHECK(homology(star, 2) == FgAbGroup::trivial());
    }
    // torus annuli: each side is a circle up to homotopy
    auto torus = covering_pair(id_of("torus"));
    for (const auto* side : {&torus.a, &torus.b}) {
        auto piece = side->chain_complex();
        CHECK(homology(piece, 0) == Z());
        CHECK(homology(piece, 1) == Z());
        CHECK(homology(piece, 2) == FgAbGroup::trivial());
    }
    // sphere covers: two balls
    for (const auto& name : {"s2", "s3"}) {
        auto cover = covering_pair(id_of(name));
        CAPTURE(name);
        for (const auto* side : {&cover.a, &cover.b}) {
            auto piece = side->chain_complex();
            CHECK(homology(piece, 0) == Z());
            for (long n = 1; n <= static_cast<long>(piece.dim()); ++n)
                CHECK(homology(piece, n) == FgAbGroup::trivial());
        }
    }
}

TEST_CASE("simplicial complexes round trip through json") {
    auto torus = simplicial(id_of("torus"));
    CHECK(SimplicialComplex::from_json(torus.to_json()) == torus);
    auto j = torus.to_json();
    j["facets"][0][0] = 12;  // out of range vertex
    CHECK_THROWS_AS(SimplicialComplex::from_json(j), std::invalid_argument);
}
