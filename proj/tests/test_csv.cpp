#include <doctest.h>

#include <cmath>
#include <sstream>

#include "tele/csv.hpp"
#include "tele/parallel.hpp"

using namespace tele;

TEST_CASE("fixed notation with nine significant digits") {
    CHECK(format_number(4.4132699151) == "4.41326992");
    CHECK(format_number(0.000123456789123) == "0.000123456789");
    CHECK(format_number(12345.6789) == "12345.6789");
    CHECK(format_number(-2.0 / 3.0) == "-0.666666667");
    CHECK(format_number(0.99999999999) == "1.00000000");
    CHECK(format_number(9.9999999996e-5) == "0.000100000000");
    CHECK(format_number(123456789012.0) == "123456789012");
    CHECK(format_number(0.0) == "0");
    CHECK(format_number(-0.0) == "0");
    CHECK(format_number(std::optional<double>{}) == "");
}

TEST_CASE("csv writer quoting and line endings") {
    std::ostringstream out;
    CsvWriter w(out, {"name", "value"});
    w.row({"a,b", "1"});
    w.row({"say \"hi\"", "2"});
    CHECK(out.str() == "name,value\n\"a,b\",1\n\"say \"\"hi\"\"\",2\n");
    CHECK_THROWS(w.row({"only one"}));
}

TEST_CASE("gauss-legendre integrates polynomials exactly") {
    const auto g = gauss_legendre(8);
    double s0 = 0.0, s14 = 0.0;
    for (std::size_t k = 0; k < g.nodes.size(); ++k) {
        s0 += g.weights[k];
        s14 += g.weights[k] * std::pow(g.nodes[k], 14);
    }
    CHECK(s0 == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(s14 == doctest::Approx(2.0 / 15.0).epsilon(1e-13));
}

TEST_CASE("parallel_map keeps order") {
    const auto v = parallel_map(100, [](std::size_t i) { return static_cast<int>(i * i); });
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(v[i] == static_cast<int>(i * i));
    CHECK(worker_count() >= 1);
}
