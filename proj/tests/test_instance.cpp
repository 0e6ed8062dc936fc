// test_instance.cpp — instance JSON: strict parsing, physics validation on
// load, and exact round-trips at double precision

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <string>

#include "tqfi/fisher.hpp"
#include "tqfi/instance.hpp"

using nlohmann::json;
using tqfi::Instance;

namespace {

const char* kQubit = R"({
    "d": 2,
    "rho": [[[0.7, 0], [0, 0]], [[0, 0], [0.3, 0]]],
    "generator": [[[0, 0], [1, 0]], [[1, 0], [0, 0]]]
})";

bool bitwise_equal(const tqfi::Matrix& a, const tqfi::Matrix& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() && (a.array() == b.array()).all();
}

} // namespace

TEST_CASE("a well-formed instance parses with theta defaulting to zero") {
    Instance inst = tqfi::parse_instance(json::parse(kQubit));
    REQUIRE(inst.d == 2);
    REQUIRE(inst.theta == 0.0);
    REQUIRE(inst.rho(0, 0) == tqfi::Complex(0.7, 0.0));
    REQUIRE(inst.rho(1, 1) == tqfi::Complex(0.3, 0.0));
    REQUIRE(inst.generator(0, 1) == tqfi::Complex(1.0, 0.0));

    tqfi::UnitaryFamily fam = inst.family();
    REQUIRE(fam.dim() == 2);
    REQUIRE(std::abs(tqfi::qfi(fam, 0.0).value - 0.64) <= 1e-12);

    json with_theta = json::parse(kQubit);
    with_theta["theta"] = 0.25;
    REQUIRE(tqfi::parse_instance(with_theta).theta == 0.25);
}

TEST_CASE("malformed instances are rejected with input errors") {
    auto reject = [](json j) { REQUIRE_THROWS_AS(tqfi::parse_instance(j), std::invalid_argument); };

    reject(json::array());                       // not an object
    reject(json::parse(R"({"rho": [], "generator": []})")); // d missing
    json base = json::parse(kQubit);

    json j = base;
    j["d"] = 0;
    reject(j);
    j = base;
    j["d"] = 2.5;
    reject(j);
    j = base;
    j.erase("generator");
    reject(j);
    j = base;
    j["extra"] = 1;
    reject(j);
    j = base;
    j["theta"] = "soon";
    reject(j);
    j = base;
    j["rho"][0] = json::array({json::array({1.0, 0.0})}); // short row
    reject(j);
    j = base;
    j["rho"][0][0] = json::array({1.0});                  // not an [re, im] pair
    reject(j);
    j = base;
    j["rho"][0][0] = json::array({"1", 0.0});             // non-numeric entry
    reject(j);
}

TEST_CASE("the physics of the loaded matrices is validated by the family") {
    json j = json::parse(kQubit);
    j["rho"][0][1] = json::array({0.2, 0.0}); // breaks Hermiticity
    REQUIRE_THROWS_AS(tqfi::parse_instance(j).family(), tqfi::NonHermitianInput);

    j = json::parse(kQubit);
    j["rho"][1][1] = json::array({0.5, 0.0}); // trace 1.2
    REQUIRE_THROWS_AS(tqfi::parse_instance(j).family(), std::invalid_argument);

    j = json::parse(kQubit);
    j["generator"][0][1] = json::array({0.0, 1.0}); // G != G†
    REQUIRE_THROWS_AS(tqfi::parse_instance(j).family(), tqfi::NonHermitianInput);
}

TEST_CASE("serialization round-trips bit for bit") {
    Instance original = tqfi::random_instance(4, 2, 7);
    const std::string once = tqfi::instance_to_json(original);
    Instance reloaded = tqfi::parse_instance(json::parse(once));

    REQUIRE(reloaded.d == original.d);
    REQUIRE(reloaded.theta == original.theta);
    REQUIRE(bitwise_equal(reloaded.rho, original.rho));
    REQUIRE(bitwise_equal(reloaded.generator, original.generator));
    REQUIRE(tqfi::instance_to_json(reloaded) == once);

    // Through the filesystem as well.
    const std::filesystem::path path =
        std::filesystem::temp_directory_path() / "tqfi_instance_roundtrip.json";
    tqfi::save_instance(original, path.string());
    Instance from_disk = tqfi::load_instance(path.string());
    REQUIRE(bitwise_equal(from_disk.rho, original.rho));
    REQUIRE(bitwise_equal(from_disk.generator, original.generator));
    std::filesystem::remove(path);

    REQUIRE_THROWS_AS(tqfi::load_instance("/nonexistent/instance.json"),
                      std::invalid_argument);
}

TEST_CASE("reals are emitted with enough digits to survive reparsing") {
    for (double x : {1.0 / 3.0, 0.64, 2.8, 1e-300, 6.02214076e23, -0.1}) {
        const std::string text = tqfi::instance_detail::format_real(x);
        REQUIRE(std::strtod(text.c_str(), nullptr) == x);
    }
}
