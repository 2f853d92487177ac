#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "sfi/serialize.hpp"

using namespace sfi;
using nlohmann::json;

TEST_CASE("shortest round-trip formatting") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> d(-300, 300);
    for (int i = 0; i < 1000; ++i) {
        const double v = std::pow(10.0, d(rng)) * (i % 2 ? -1 : 1);
        REQUIRE(std::stod(format_double(v)) == v);
    }
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(1e20) == "1e+20");
}

TEST_CASE("JSON artifacts read back to identical values") {
    const auto fp = derive_params(LaserInput::from_ponderomotive(0.1, 0.3, Polarization::circular), 0.5);
    const auto s = spectrum(fp, BoundStateModel::hydrogen_1s());
    OutputMeta meta{"spectrum", "0123456789abcdef", to_json(fp), json::object()};
    const json back = json::parse(spectrum_json(s, meta).dump(2));
    REQUIRE(back["data"].size() == s.size());
    for (std::size_t k = 0; k < s.size(); ++k) {
        CHECK(back["data"][k]["n"].get<int>() == s[k].n);
        CHECK(back["data"][k]["p_au"].get<double>() == s[k].p);
        CHECK(back["data"][k]["w_n"].get<double>() == s[k].w);
    }
    CHECK(back["meta"]["field"]["alpha0_c"].get<double>() == fp.alpha0_c);
    CHECK(back["meta"]["field"]["z_f"].get<double>() == fp.z_f);
}

TEST_CASE("CSV artifacts carry a metadata block and read back exactly") {
    const auto fp = derive_params(LaserInput::from_ponderomotive(0.1, 0.3), 0.5);
    const auto s = spectrum(fp, BoundStateModel::hydrogen_1s());
    OutputMeta meta{"spectrum", "0123456789abcdef", to_json(fp), {{"note", "x"}}};
    std::istringstream in(spectrum_csv(s, meta));
    std::string line;
    std::size_t meta_lines = 0, rows = 0;
    bool header = false;
    while (std::getline(in, line)) {
        if (line.rfind("# ", 0) == 0) {
            CHECK_FALSE(header);
            ++meta_lines;
            continue;
        }
        if (!header) {
            CHECK(line == "n,p_au,w_n");
            header = true;
            continue;
        }
        const auto c1 = line.find(','), c2 = line.rfind(',');
        CHECK(std::stoi(line.substr(0, c1)) == s[rows].n);
        CHECK(std::stod(line.substr(c1 + 1, c2 - c1 - 1)) == s[rows].p);
        CHECK(std::stod(line.substr(c2 + 1)) == s[rows].w);
        ++rows;
    }
    CHECK(rows == s.size());
    CHECK(meta_lines >= 15);
}

TEST_CASE("every CSV layout is documented") {
    for (const char* name : {"params", "regime-map", "spectrum", "rate", "momentum-map", "fit", "bessel"}) {
        bool found = false;
        for (const auto& l : csv_layouts())
            if (l.name == name) found = !l.columns.empty();
        CHECK_MESSAGE(found, name);
    }
}

TEST_CASE("hash is stable") {
    CHECK(hex64(fnv1a64("")) == "cbf29ce484222325");
    CHECK(hex64(fnv1a64("a")) == "af63dc4c8601ec8c");
}
