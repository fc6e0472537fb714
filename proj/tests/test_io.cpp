#include "doctest.h"

#include "hopf/io.hpp"

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <sstream>
#include <string>

using namespace hopf;

namespace {

// independent FNV-1a, written out long-hand on purpose
std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("g17 formatting round-trips doubles bitwise") {
    for (double x : {3.14159265358979323846, 0.1, 1e300, 5e-324, -0.0,
                     1.0 / 3.0, 123456789.123456789}) {
        const std::string s = io::format_g17(x);
        const double back = std::strtod(s.c_str(), nullptr);
        CHECK(back == x);
        if (std::signbit(x)) CHECK(std::signbit(back));
    }
}

TEST_CASE("csv writer emits the exact expected bytes") {
    std::ostringstream os;
    io::CsvWriter w(os);
    w.comment("alpha = 1");
    w.header({"t", "value"});
    w.row({0.5, 1.0 / 3.0});
    CHECK(os.str() ==
          "# alpha = 1\n"
          "t,value\n"
          "0.5,0.33333333333333331\n");
}

TEST_CASE("config parsing") {
    const auto kv = io::parse_config_text(
        "# leading comment\n"
        "\n"
        "alpha = 1.5\n"
        "  seed=42   \n"
        "label = hopf run \n"
        "alpha = 2.5\n");
    CHECK(kv.size() == 3);
    CHECK(kv.at("alpha") == "2.5");  // last assignment wins
    CHECK(kv.at("seed") == "42");
    CHECK(kv.at("label") == "hopf run");

    CHECK_THROWS_WITH_AS(io::parse_config_text("alpha = 1\nbogus line\n"),
                         doctest::Contains("line 2"), std::runtime_error);
    CHECK_THROWS_AS(io::parse_config_text("= 3\n"), std::runtime_error);
    CHECK_THROWS_AS(io::parse_config_file("/nonexistent/path.cfg"),
                    std::runtime_error);
}

TEST_CASE("config hash is canonical and value-sensitive") {
    const std::map<std::string, std::string> kv{{"alpha", "1"},
                                                {"seed", "42"}};
    const std::string h = io::config_hash(kv);
    CHECK(h.size() == 16);
    CHECK(h == fnv1a_hex("alpha=1\nseed=42\n"));

    std::map<std::string, std::string> kv2 = kv;
    kv2["seed"] = "43";
    CHECK(io::config_hash(kv2) != h);
    CHECK(io::config_hash(kv) == h);  // stable across calls
}

}  // TEST_SUITE
