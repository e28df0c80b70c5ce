#include <catch2/catch_amalgamated.hpp>

#include <limits>
#include <sstream>

#include "fscan/io.hpp"

using namespace fscan;

TEST_CASE("matrix literal parsing") {
    std::istringstream in("2 3\n1 2.5 -3\n4 5 6\n");
    const auto m = parse_matrix(in);
    REQUIRE(m.rows() == 2);
    REQUIRE(m.cols() == 3);
    CHECK(m(0, 1) == 2.5);
    CHECK(m(1, 2) == 6.0);
}

TEST_CASE("matrix parsing accepts -inf and rejects junk") {
    std::istringstream in("1 2\n-inf 3\n");
    auto m = parse_matrix(in);
    CHECK(m(0, 0) == -std::numeric_limits<double>::infinity());
    tropical_canonicalize(m);
    CHECK(m(0, 0) == TropicalSemiring::bottom());
    CHECK(m(0, 1) == 3.0);

    std::istringstream bad_header("2\n1 2\n");
    CHECK_THROWS_AS(parse_matrix(bad_header), ParseError);
    std::istringstream bad_body("1 2\n1 frog\n");
    CHECK_THROWS_AS(parse_matrix(bad_body), ParseError);
    std::istringstream short_body("2 2\n1 2 3\n");
    CHECK_THROWS_AS(parse_matrix(short_body), ParseError);
}

TEST_CASE("series parsing flattens commas and lines the same way") {
    std::istringstream commas("3,1,7,0,4,1,6,3\n");
    const auto a = flatten_series(parse_series(commas));
    std::istringstream lines("3\n1\n7\n0\n4\n1\n6\n3\n");
    const auto b = flatten_series(parse_series(lines));
    CHECK(a == b);
    CHECK(a == std::vector<double>{3, 1, 7, 0, 4, 1, 6, 3});

    std::istringstream multi("0.5, 1.5\n2.5 3.5\n\n");
    const auto rows = parse_series(multi);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == std::vector<double>{0.5, 1.5});
    CHECK(rows[1] == std::vector<double>{2.5, 3.5});
}

TEST_CASE("image csv parsing") {
    std::istringstream in("2 2 3\n0 0 0\n0.5 0.25 1\n1 1 1\n0 1 0\n");
    const auto img = parse_image_csv(in);
    REQUIRE(img.width == 2);
    REQUIRE(img.height == 2);
    CHECK(img.at(1, 0) == std::array<double, 3>{0.5, 0.25, 1});
    CHECK(img.at(0, 1) == std::array<double, 3>{1, 1, 1});

    std::istringstream short_in("2 2 3\n0 0 0\n");
    CHECK_THROWS_AS(parse_image_csv(short_in), ParseError);
    std::istringstream bad_channels("2 2 1\n0 0 0\n");
    CHECK_THROWS_AS(parse_image_csv(bad_channels), ParseError);
}

TEST_CASE("scalar grid parsing") {
    std::istringstream in("3 2 1\n1\n2\n3\n4\n5\n6\n");
    const auto grid = parse_scalar_grid_csv(in);
    REQUIRE(grid.m == 3);
    REQUIRE(grid.n == 2);
    CHECK(grid.values == std::vector<double>{1, 2, 3, 4, 5, 6});
}

TEST_CASE("binary ppm parsing scales to unit range") {
    std::string data = "P6\n# comment\n2 2\n255\n";
    const unsigned char bytes[] = {255, 0, 0, 0, 255, 0, 0, 0, 255, 51, 51, 51};
    data.append(reinterpret_cast<const char*>(bytes), sizeof(bytes));
    std::istringstream in(data, std::ios::binary);
    const auto img = parse_ppm(in);
    REQUIRE(img.width == 2);
    REQUIRE(img.height == 2);
    CHECK(img.at(0, 0) == std::array<double, 3>{1, 0, 0});
    CHECK(img.at(1, 1)[0] == Catch::Approx(0.2));

    std::istringstream bad("P5\n2 2\n255\n");
    CHECK_THROWS_AS(parse_ppm(bad), ParseError);
}

TEST_CASE("scalar formatting round-trips") {
    CHECK(format_scalar(0.0) == "0");
    CHECK(format_scalar(3.0) == "3");
    const double v = 0.1 + 0.2;
    CHECK(std::stod(format_scalar(v)) == v);
    CHECK(format_tropical_scalar(TropicalSemiring::bottom()) == "-inf");
    CHECK(format_tropical_scalar(2.5) == "2.5");
}
