#pragma once

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <system_error>

#include "casimir/bodies.hpp"
#include "casimir/error.hpp"
#include "casimir/extractor.hpp"
#include "casimir/kernel.hpp"
#include "casimir/mems.hpp"
#include "casimir/pair_density.hpp"
#include "casimir/pairwise.hpp"

namespace casimir {

inline constexpr const char* toolkit_version = "0.1.0";

using json = nlohmann::json;

/// Shortest round-trip decimal form of a double; used for CSV so files are
/// byte-identical across runs.
inline std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc())
        return "nan";
    return std::string(buf, ptr);
}

// --- bodies ----------------------------------------------------------------

inline json to_json(const Body& body) {
    struct V {
        json operator()(const Ball& b) const {
            return {{"kind", "ball"}, {"radius", b.radius}};
        }
        json operator()(const Cube& b) const {
            return {{"kind", "cube"}, {"side", b.side}};
        }
        json operator()(const Cylinder& b) const {
            return {{"kind", "cylinder"}, {"radius", b.radius},
                    {"perUnitLength", b.per_unit_length}};
        }
        json operator()(const HalfSpace& b) const {
            return {{"kind", "half-space"}, {"offset", b.offset}, {"side", b.side}};
        }
        json operator()(const Slab& b) const {
            return {{"kind", "slab"}, {"thickness", b.thickness}, {"offset", b.offset}};
        }
        json operator()(const PointAtom& b) const {
            return {{"kind", "point-atom"}, {"position", b.position}, {"alpha", b.alpha}};
        }
    };
    return std::visit(V{}, body);
}

inline Body body_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "ball")
        return Ball{j.at("radius").get<double>()};
    if (kind == "cube")
        return Cube{j.at("side").get<double>()};
    if (kind == "cylinder")
        return Cylinder{j.at("radius").get<double>(), j.value("perUnitLength", true)};
    if (kind == "half-space")
        return HalfSpace{j.at("offset").get<double>(), j.at("side").get<int>()};
    if (kind == "slab")
        return Slab{j.at("thickness").get<double>(), j.at("offset").get<double>()};
    if (kind == "point-atom")
        return PointAtom{j.at("position").get<double>(), j.at("alpha").get<double>()};
    throw domain_error("body_from_json: unknown body kind '" + kind + "'");
}

inline json to_json(const Material& m) {
    json j{{"alpha", m.alpha}, {"numberDensity", m.number_density}};
    if (m.epsilon) {
        if (std::isinf(*m.epsilon))
            j["epsilon"] = "inf";
        else
            j["epsilon"] = *m.epsilon;
    }
    return j;
}

// --- pair-distance density (schema pdd-v1) ----------------------------------

inline json to_json(const Provenance& p) {
    json j{{"method", to_string(p.method)}};
    if (p.method == PdMethod::GridAutocorrelation)
        j["resolution"] = p.resolution;
    if (p.method == PdMethod::MonteCarlo) {
        j["samples"] = p.samples;
        j["seed"] = p.seed;
    }
    return j;
}

inline json to_json(const PairDistanceDensity& pdd) {
    json pieces = json::array();
    for (const auto& piece : pdd.pieces) {
        if (const auto* poly = std::get_if<PolyPiece>(&piece)) {
            json coeffs = json::array();
            for (double c : poly->coeffs)
                coeffs.push_back(c);
            pieces.push_back({{"kind", "polynomial"},
                              {"interval", {poly->lo, poly->hi}},
                              {"coefficients", coeffs}});
        } else if (const auto* disk = std::get_if<DiskAnalyticPiece>(&piece)) {
            pieces.push_back({{"kind", "disk-analytic"}, {"radius", disk->radius}});
        }
    }
    json j{{"schema", "pdd-v1"},
           {"dim", pdd.dim},
           {"breakpoints", pdd.breakpoints},
           {"pieces", pieces},
           {"totalMeasure", pdd.total_measure},
           {"provenance", to_json(pdd.provenance)},
           {"fitResidual", pdd.fit_residual},
           {"fitCondition", pdd.fit_condition}};
    if (!pdd.bin_edges.empty()) {
        j["binEdges"] = pdd.bin_edges;
        j["binMasses"] = pdd.bin_masses;
    }
    return j;
}

inline PairDistanceDensity pdd_from_json(const json& j) {
    if (j.value("schema", "") != std::string("pdd-v1"))
        throw domain_error("pdd_from_json: unknown schema");
    PairDistanceDensity pdd;
    pdd.dim = j.at("dim").get<int>();
    pdd.breakpoints = j.at("breakpoints").get<std::vector<double>>();
    for (const auto& pj : j.at("pieces")) {
        const std::string kind = pj.at("kind").get<std::string>();
        if (kind == "polynomial") {
            PolyPiece piece;
            piece.lo = pj.at("interval")[0].get<double>();
            piece.hi = pj.at("interval")[1].get<double>();
            const auto coeffs = pj.at("coefficients").get<std::vector<double>>();
            for (std::size_t m = 0; m < 6 && m < coeffs.size(); ++m)
                piece.coeffs[m] = coeffs[m];
            pdd.pieces.push_back(piece);
        } else if (kind == "disk-analytic") {
            pdd.pieces.push_back(DiskAnalyticPiece{pj.at("radius").get<double>()});
        } else {
            throw domain_error("pdd_from_json: unknown piece kind");
        }
    }
    pdd.total_measure = j.at("totalMeasure").get<double>();
    const auto& prov = j.at("provenance");
    const std::string method = prov.at("method").get<std::string>();
    if (method == "analytic")
        pdd.provenance.method = PdMethod::Analytic;
    else if (method == "grid-autocorrelation")
        pdd.provenance.method = PdMethod::GridAutocorrelation;
    else if (method == "monte-carlo")
        pdd.provenance.method = PdMethod::MonteCarlo;
    else
        throw domain_error("pdd_from_json: unknown provenance method");
    pdd.provenance.resolution = prov.value("resolution", 0);
    pdd.provenance.samples = prov.value("samples", std::int64_t{0});
    pdd.provenance.seed = prov.value("seed", std::uint64_t{0});
    pdd.fit_residual = j.value("fitResidual", 0.0);
    pdd.fit_condition = j.value("fitCondition", 0.0);
    if (j.contains("binEdges")) {
        pdd.bin_edges = j.at("binEdges").get<std::vector<double>>();
        pdd.bin_masses = j.at("binMasses").get<std::vector<double>>();
    }
    return pdd;
}

// --- reports -----------------------------------------------------------------

inline json to_json(const CutoffExpansion& e) {
    return {{"b4", e.b4},
            {"b3", e.b3},
            {"b2", e.b2},
            {"b1", e.b1},
            {"bLog", e.b_log},
            {"b0", e.b0},
            {"b0Uncertainty", e.b0_uncertainty},
            {"fitResidual", e.fit_residual},
            {"conditionNumber", e.condition_number},
            {"sGrid", e.s_grid},
            {"basis",
             {{"s4", e.basis.s4},
              {"s3", e.basis.s3},
              {"s2", e.basis.s2},
              {"s1", e.basis.s1},
              {"log", e.basis.log_term}}}};
}

inline json to_json(const PureTermRow& row) {
    json exact;
    if (row.exact.value)
        exact["value"] = *row.exact.value;
    exact["sign"] = row.exact.sign;
    exact["note"] = row.exact.note;
    json j{{"geometry", row.geometry},
           {"scaleLength", row.scale_length},
           {"expansion", to_json(row.expansion)},
           {"exact", exact},
           {"signAgreement", row.sign_agreement},
           {"method", to_string(row.method)},
           {"seed", row.seed}};
    if (row.method == PdMethod::GridAutocorrelation)
        j["resolution"] = row.resolution;
    if (row.method == PdMethod::MonteCarlo)
        j["samples"] = row.mc_samples;
    if (row.geometry == "cylinder")
        j["zeroConsistent"] = row.zero_consistent;
    return j;
}

inline const char* to_string(ForceSign s) {
    switch (s) {
        case ForceSign::Attractive: return "attractive";
        case ForceSign::Repulsive: return "repulsive";
        case ForceSign::Zero: return "zero";
    }
    return "?";
}

inline json to_json(const DeviationRow& row) {
    return {{"quantity", row.quantity},
            {"pairwise", row.pairwise},
            {"exact", row.exact},
            {"ratio", row.ratio},
            {"ratioIsExact", row.ratio_is_exact},
            {"pairwiseForce", to_string(row.pairwise_force)},
            {"exactForce", to_string(row.exact_force)},
            {"note", row.note}};
}

// --- file helpers --------------------------------------------------------------

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << text;
}

inline void write_json_file(const std::filesystem::path& path, const json& j) {
    write_text_file(path, j.dump(2) + "\n");
}

inline json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());
    json j;
    in >> j;
    return j;
}

// --- cache -----------------------------------------------------------------

inline std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (unsigned char ch : text) {
        hash ^= ch;
        hash *= 0x100000001b3ull;
    }
    return hash;
}

inline std::string cache_key(const Body& body, PdMethod method, int resolution,
                             std::int64_t samples, std::uint64_t seed) {
    json j{{"body", to_json(body)}, {"method", to_string(method)}};
    if (method == PdMethod::GridAutocorrelation)
        j["resolution"] = resolution;
    if (method == PdMethod::MonteCarlo) {
        j["samples"] = samples;
        j["seed"] = seed;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(j.dump())));
    return buf;
}

/// Content-addressed store of serialized pair measures.
class PairDensityCache {
public:
    explicit PairDensityCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

    const std::filesystem::path& dir() const { return dir_; }

    std::optional<PairDistanceDensity> load(const std::string& key) const {
        const auto path = dir_ / (key + ".json");
        if (!std::filesystem::exists(path))
            return std::nullopt;
        return pdd_from_json(read_json_file(path));
    }

    void store(const std::string& key, const PairDistanceDensity& pdd) const {
        std::filesystem::create_directories(dir_);
        write_json_file(dir_ / (key + ".json"), to_json(pdd));
    }

    std::vector<std::string> list() const {
        std::vector<std::string> keys;
        if (!std::filesystem::exists(dir_))
            return keys;
        for (const auto& entry : std::filesystem::directory_iterator(dir_))
            if (entry.path().extension() == ".json")
                keys.push_back(entry.path().stem().string());
        std::sort(keys.begin(), keys.end());
        return keys;
    }

    std::size_t clear() const {
        std::size_t removed = 0;
        if (!std::filesystem::exists(dir_))
            return removed;
        for (const auto& entry : std::filesystem::directory_iterator(dir_))
            if (entry.path().extension() == ".json") {
                std::filesystem::remove(entry.path());
                ++removed;
            }
        return removed;
    }

private:
    std::filesystem::path dir_;
};

} // namespace casimir
