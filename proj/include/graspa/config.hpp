#pragma once

#include <cmath>
#include <string>
#include <type_traits>
#include <variant>

#include <nlohmann/json.hpp>

#include "graspa/experiments.hpp"
#include "graspa/maps.hpp"

namespace graspa {

using json = nlohmann::json;

namespace detail {
inline json domain_json(const PiecewiseDomain& d) {
    return {{"a", d.interval().a()}, {"b", d.interval().b()},
            {"cuts", std::vector<double>(d.cuts().begin(), d.cuts().end())}};
}

inline json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }
}  // namespace detail

/// One object per stage, e.g. {"type": "sgibbs", "kappa": 10000, "domain": {...}}.
[[nodiscard]] inline json map_to_json(const MapChain& chain) {
    json stages = json::array();
    for (const auto& stage : chain.stages()) {
        stages.push_back(std::visit(
            [](const auto& s) -> json {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, IdentityMap>) {
                    return {{"type", "identity"}};
                } else if constexpr (std::is_same_v<T, AffineToReferenceMap>) {
                    return {{"type", "affine_to_reference"}, {"piece", s.piece}, {"domain", detail::domain_json(s.domain)}};
                } else if constexpr (std::is_same_v<T, AffineFromReferenceMap>) {
                    return {{"type", "affine_from_reference"}, {"piece", s.piece}, {"domain", detail::domain_json(s.domain)}};
                } else if constexpr (std::is_same_v<T, KteMap>) {
                    return {{"type", "kte"}, {"alpha", s.alpha}};
                } else if constexpr (std::is_same_v<T, SGibbsMap>) {
                    return {{"type", "sgibbs"}, {"kappa", s.kappa}, {"domain", detail::domain_json(s.domain)}};
                } else if constexpr (std::is_same_v<T, MkteMap>) {
                    return {{"type", "mkte"}, {"alpha", s.alpha}, {"domain", detail::domain_json(s.domain)}};
                } else {
                    return {{"type", "vn"}, {"n", s.n}, {"domain", detail::domain_json(s.domain)}};
                }
            },
            stage));
    }
    return stages;
}

[[nodiscard]] inline MapChain map_from_json(const json& j) {
    if (!j.is_array()) throw InvalidArgument("map descriptor must be an array of stages");
    const auto domain_of = [](const json& s) {
        const auto& d = s.at("domain");
        return PiecewiseDomain(Interval(d.at("a").get<double>(), d.at("b").get<double>()),
                               d.value("cuts", std::vector<double>{}));
    };
    std::vector<AtomicMap> stages;
    try {
        for (const auto& s : j) {
            const auto type = s.at("type").get<std::string>();
            if (type == "identity") stages.emplace_back(IdentityMap{});
            else if (type == "affine_to_reference") stages.emplace_back(AffineToReferenceMap{domain_of(s), s.at("piece").get<std::size_t>()});
            else if (type == "affine_from_reference") stages.emplace_back(AffineFromReferenceMap{domain_of(s), s.at("piece").get<std::size_t>()});
            else if (type == "kte") stages.emplace_back(KteMap{s.at("alpha").get<double>()});
            else if (type == "sgibbs") stages.emplace_back(SGibbsMap{s.at("kappa").get<double>(), domain_of(s)});
            else if (type == "mkte") stages.emplace_back(MkteMap{s.at("alpha").get<double>(), domain_of(s)});
            else if (type == "vn") stages.emplace_back(VnMap{s.at("n").get<std::size_t>(), domain_of(s)});
            else throw InvalidArgument("unknown map stage '" + type + "'");
        }
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("malformed map descriptor: ") + e.what());
    }
    return MapChain(std::move(stages));
}

/// Reads an experiment configuration. Recognised keys: name, function ("f1" | "f2"), cuts,
/// kappa, n, methods, rmae_grid, lebesgue_grid ("auto" or samples per piece),
/// lagrange_matrix (degrees), lagrange_grid, a, b. Unknown keys are rejected.
[[nodiscard]] inline ExperimentConfig config_from_json(const json& j) {
    static const std::vector<std::string> known = {"name", "function", "cuts", "kappa", "n", "methods", "rmae_grid",
                                                   "lebesgue_grid", "lagrange_matrix", "lagrange_grid", "a", "b"};
    if (!j.is_object()) throw InvalidArgument("experiment config must be a JSON object");
    for (const auto& [key, _] : j.items()) {
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            throw InvalidArgument("unknown config key '" + key + "'");
        }
    }
    ExperimentConfig c;
    try {
        c.name = j.value("name", std::string("experiment"));
        c.function = parse_test_function(j.value("function", std::string("f1")));
        c.interval = Interval(j.value("a", -1.0), j.value("b", 1.0));
        c.cuts = j.contains("cuts") ? j.at("cuts").get<std::vector<double>>() : default_cuts(c.function);
        c.kappa = j.value("kappa", 1e4);
        if (j.contains("n")) c.degrees = j.at("n").get<std::vector<std::size_t>>();
        if (j.contains("methods")) {
            c.methods.clear();
            for (const auto& m : j.at("methods")) c.methods.push_back(parse_method(m.get<std::string>()));
        }
        c.rmae_grid = j.value("rmae_grid", std::size_t{332});
        if (j.contains("lebesgue_grid")) {
            const auto& g = j.at("lebesgue_grid");
            if (g.is_string()) {
                if (g.get<std::string>() != "auto") throw InvalidArgument("lebesgue_grid must be \"auto\" or an integer");
            } else {
                c.lebesgue_grid.points_per_piece = g.get<std::size_t>();
            }
        }
        if (j.contains("lagrange_matrix")) c.lagrange_degrees = j.at("lagrange_matrix").get<std::vector<std::size_t>>();
        c.lagrange_grid = j.value("lagrange_grid", std::size_t{100});
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("malformed experiment config: ") + e.what());
    }
    if (c.name.empty() || c.name.find_first_of("/\\") != std::string::npos) {
        throw InvalidArgument("config name must be a plain file stem");
    }
    c.validate();
    return c;
}

[[nodiscard]] inline json config_to_json(const ExperimentConfig& c) {
    json methods = json::array();
    for (Method m : c.methods) methods.push_back(to_string(m));
    return {{"name", c.name},
            {"function", to_string(c.function)},
            {"a", c.interval.a()},
            {"b", c.interval.b()},
            {"cuts", c.cuts},
            {"kappa", c.kappa},
            {"n", c.degrees},
            {"methods", methods},
            {"rmae_grid", c.rmae_grid},
            {"lebesgue_grid", c.lebesgue_grid.points_per_piece ? json(*c.lebesgue_grid.points_per_piece) : json("auto")},
            {"lagrange_matrix", c.lagrange_degrees},
            {"lagrange_grid", c.lagrange_grid}};
}

/// Config echo plus one entry per cell with its map descriptor and metrics.
[[nodiscard]] inline json result_to_json(const ExperimentConfig& c, const ExperimentResult& r) {
    const PiecewiseDomain domain(c.interval, c.cuts);
    json cells = json::array();
    for (const auto& cell : r.cells) {
        cells.push_back({{"method", to_string(cell.method)},
                         {"n", cell.n},
                         {"map", map_to_json(make_map(cell.method, c.kappa, domain, cell.n))},
                         {"rmae", detail::number_or_null(cell.rmae)},
                         {"lebesgue_constant", detail::number_or_null(cell.lebesgue_constant)},
                         {"overflow", cell.overflow},
                         {"message", cell.message}});
    }
    return {{"config", config_to_json(c)}, {"cells", cells}, {"warnings", r.warnings}};
}

}  // namespace graspa
