#pragma once

// Randomized property suites behind `leedivide verify`.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"
#include "leedivide/diagram.hpp"
#include "leedivide/moves.hpp"

namespace leedivide {

struct SuiteOptions {
    std::uint64_t seed = 1;
    int max_crossings = 8;
    std::string ring = "Z2";
    int jobs = 1;
    int moves = 200;        // rm: single moves
    int scripts = 50;       // rm, morse: scripts
    int script_length = 5;
};

struct PropertyCount {
    std::string name;
    long passed = 0, total = 0;
};

struct SuiteReport {
    std::string suite;
    std::vector<PropertyCount> properties;
    std::vector<nlohmann::json> failures;  // reproducers, at most a few per property

    bool ok() const;
    void record(const std::string& property, bool pass, const nlohmann::json& reproducer = {});
    const PropertyCount* find(const std::string& property) const;
    nlohmann::json to_json() const;
};

std::vector<std::string> suite_names();  // rm mirror zeta torsion rank morse

// UNKNOWN_RING for a bad ring id, PARSE_ERROR for an unknown suite.
SuiteReport run_suite(const std::string& name, const SuiteOptions& opt);

// A braid word of the given length on `strands` strands; all letters positive
// when `positive`. Every generator occurs, so the closure diagram is connected.
std::vector<int> random_braid(int strands, int length, bool positive, std::mt19937_64& rng);

// A random Reidemeister script of `length` moves from D. Moves that would
// take the diagram past `max_crossings` are not drawn.
std::vector<Move> random_rm_script(const LinkDiagram& D, int length, int max_crossings, std::mt19937_64& rng);

}  // namespace leedivide
