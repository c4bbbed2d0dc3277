#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace factorforge;

TEST_CASE("parse the worked example") {
    Circuit c = parse_circuit("nvars 1\ng0 = input x1\ng1 = mul g0 g0\noutput g1\n");
    REQUIRE(expand(c)[0] == DensePoly::variable(1, 0, 2));
}

TEST_CASE("serialize/parse round trip is byte stable") {
    std::string messy =
        "# a comment\n"
        "nvars 2\n"
        "g0 = input x1\n"
        "\n"
        "g3 = input x2   # sparse ids are fine\n"
        "g7 = const 5\n"
        "g9 = add g0 g3\n"
        "g12 = mul g9 g7\n"
        "output g12\n";
    Circuit c = parse_circuit(messy);
    std::string normalized = serialize_circuit(c);
    REQUIRE(serialize_circuit(parse_circuit(normalized)) == normalized);
    Rng rng(21);
    REQUIRE(pit_equal(parse_circuit(normalized), c, rng, 10));
}

TEST_CASE("round trip over random circuits evaluates identically") {
    Rng rng(22);
    for (int iter = 0; iter < 20; ++iter) {
        Circuit c = random_circuit(rng, 3, 15, 10);
        Circuit back = parse_circuit(serialize_circuit(c));
        REQUIRE(pit_equal(back, c, rng, 10));
        REQUIRE(back.size() == c.size());
    }
}

TEST_CASE("parse errors carry line numbers") {
    auto expect_error = [](const std::string& text, int line) {
        try {
            parse_circuit(text);
            FAIL("expected a parse error");
        } catch (const Error& e) {
            REQUIRE(e.kind() == Errc::parse);
            REQUIRE(e.line() == line);
        }
    };

    // unknown operation
    expect_error("nvars 1\ng1 = plus g0 g0\noutput g1\n", 2);
    // forward reference
    expect_error("nvars 1\ng0 = add g1 g1\noutput g0\n", 2);
    // unknown variable
    expect_error("nvars 1\ng0 = input x2\noutput g0\n", 2);
    expect_error("nvars 1\ng0 = input x0\noutput g0\n", 2);
    // missing header
    expect_error("g0 = input x1\noutput g0\n", 1);
    // non-increasing ids
    expect_error("nvars 1\ng1 = input x1\ng1 = add g1 g1\noutput g1\n", 3);
    // output referencing an unknown gate
    expect_error("nvars 1\ng0 = input x1\noutput g9\n", 3);
    // no outputs at all
    expect_error("nvars 1\ng0 = input x1\n", 2);
}

TEST_CASE("const residues reduce modulo p") {
    Circuit c = parse_circuit("nvars 1\ng0 = const 2305843009213693952\noutput g0\n");
    // 2^61 = p + 1 reduces to 1
    REQUIRE(c.eval(std::vector<Fp>{Fp(0)})[0] == Fp::one());
}
