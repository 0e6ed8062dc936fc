#pragma once

// instance.hpp — JSON I/O for problem instances: a probe state, a generator,
// and an optional base point. Parsing is strict and every real is emitted
// with 17 significant digits so files round-trip exactly at double precision.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "tqfi/states.hpp"

namespace tqfi {

struct Instance {
    Eigen::Index d = 0;
    Matrix rho;
    Matrix generator;
    double theta = 0.0;

    // Validation of the physics (Hermiticity, positivity, unit trace) lives
    // in the state constructors; building the family runs all of it.
    UnitaryFamily family() const { return UnitaryFamily(DensityMatrix(rho), generator); }
};

namespace instance_detail {

inline Matrix parse_matrix(const nlohmann::json& node, Eigen::Index d, const char* field) {
    const std::string what =
        std::string("instance: '") + field + "' must be a d×d array of [re, im] pairs";
    if (!node.is_array() || node.size() != static_cast<std::size_t>(d))
        throw std::invalid_argument(what);
    Matrix out(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        const nlohmann::json& row = node[static_cast<std::size_t>(i)];
        if (!row.is_array() || row.size() != static_cast<std::size_t>(d))
            throw std::invalid_argument(what);
        for (Eigen::Index j = 0; j < d; ++j) {
            const nlohmann::json& entry = row[static_cast<std::size_t>(j)];
            if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
                !entry[1].is_number())
                throw std::invalid_argument(what);
            out(i, j) = Complex(entry[0].get<double>(), entry[1].get<double>());
        }
    }
    return out;
}

// 17 significant digits: the shortest prefix of %.17g that still round-trips
// every double exactly, per the serialization contract.
inline std::string format_real(double x) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.17g", x);
    return buffer;
}

inline void emit_matrix(std::ostream& os, const Matrix& A, const char* indent) {
    os << "[\n";
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
        os << indent << "  [";
        for (Eigen::Index j = 0; j < A.cols(); ++j) {
            os << (j == 0 ? "" : ", ") << '[' << format_real(A(i, j).real()) << ", "
               << format_real(A(i, j).imag()) << ']';
        }
        os << ']' << (i + 1 < A.rows() ? "," : "") << '\n';
    }
    os << indent << ']';
}

} // namespace instance_detail

inline Instance parse_instance(const nlohmann::json& root) {
    if (!root.is_object())
        throw std::invalid_argument("instance: top level must be an object");
    for (const auto& item : root.items())
        if (item.key() != "d" && item.key() != "rho" && item.key() != "generator" &&
            item.key() != "theta")
            throw std::invalid_argument("instance: unrecognized field '" + item.key() + "'");
    if (!root.contains("d") || !root["d"].is_number_integer() || root["d"].get<std::int64_t>() < 1)
        throw std::invalid_argument("instance: 'd' must be a positive integer");
    if (!root.contains("rho") || !root.contains("generator"))
        throw std::invalid_argument("instance: fields 'rho' and 'generator' are required");

    Instance out;
    out.d = static_cast<Eigen::Index>(root["d"].get<std::int64_t>());
    out.rho = instance_detail::parse_matrix(root["rho"], out.d, "rho");
    out.generator = instance_detail::parse_matrix(root["generator"], out.d, "generator");
    if (root.contains("theta")) {
        if (!root["theta"].is_number())
            throw std::invalid_argument("instance: 'theta' must be a real number");
        out.theta = root["theta"].get<double>();
    }
    return out;
}

inline Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("instance: cannot open '" + path + "'");
    nlohmann::json root;
    try {
        root = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("instance: malformed JSON: ") + e.what());
    }
    return parse_instance(root);
}

inline std::string instance_to_json(const Instance& instance) {
    std::ostringstream os;
    os << "{\n";
    os << "  \"d\": " << instance.d << ",\n";
    os << "  \"theta\": " << instance_detail::format_real(instance.theta) << ",\n";
    os << "  \"rho\": ";
    instance_detail::emit_matrix(os, instance.rho, "  ");
    os << ",\n  \"generator\": ";
    instance_detail::emit_matrix(os, instance.generator, "  ");
    os << "\n}\n";
    return os.str();
}

inline void save_instance(const Instance& instance, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("instance: cannot write '" + path + "'");
    out << instance_to_json(instance);
}

inline Instance random_instance(Eigen::Index d, Eigen::Index r, std::uint64_t seed) {
    Instance out;
    out.d = d;
    out.rho = random_density(d, r, seed).matrix();
    out.generator = random_generator(d, mix_seed(seed, 1));
    out.theta = 0.0;
    return out;
}

} // namespace tqfi
