#include "doctest.h"
#include "polycat/errors.hpp"
#include "polycat/signature.hpp"

using namespace polycat;

TEST_CASE("signature parsing") {
    Signature s = parse_signature("# objects\n"
                                  "obj A\nobj B\n\n"
                                  "gen f : A, A -> B\n"
                                  "gen e : . -> A\n"
                                  "gen k : B -> .\n");
    CHECK(s.objects.size() == 2);
    REQUIRE(s.generators.size() == 3);
    CHECK(s.generator("f").source == Context{ObjectId{"A"}, ObjectId{"A"}});
    CHECK(s.generator("f").target == Context{ObjectId{"B"}});
    CHECK(s.generator("e").source.empty());
    CHECK(s.generator("k").target.empty());
}

TEST_CASE("signature parsing rejects bad input") {
    CHECK_THROWS_AS(parse_signature("gen f : A -> B\n"), ParseError);  // undeclared objects
    CHECK_THROWS_AS(parse_signature("obj A\ngen f : A -> A\ngen f : A -> A\n"), ParseError);
    CHECK_THROWS_AS(parse_signature("obj A\ngen f : A\n"), ParseError);
    CHECK_THROWS_AS(parse_signature("wat A\n"), ParseError);
}
