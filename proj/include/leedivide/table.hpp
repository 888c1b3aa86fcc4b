#pragma once

// Knot tables and batch evaluation.
//
// JSONL tables hold one {"name", "pd", "loops"} object per line. CSV tables
// have a header row with `name` and `pd` columns; `pd` is PD text.

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "leedivide/diagram.hpp"
#include "leedivide/error.hpp"

namespace leedivide {

struct TableEntry {
    std::string name;
    std::optional<LinkDiagram> diagram;  // empty when the row did not parse
    nlohmann::json error;                // {"code", "message"} for a bad row
    nlohmann::json extra;                // the raw JSONL object, if any
};

enum class TableFormat { Jsonl, Csv };

// CSV when the path ends in .csv, JSONL otherwise. Throws IO if unreadable.
std::vector<TableEntry> read_table(const std::string& path);
std::vector<TableEntry> read_table(std::istream& in, TableFormat format);

// The bundled prime-knot table, filtered by crossing count.
std::string data_dir();
std::vector<TableEntry> bundled_knots(int max_crossings = 99);

nlohmann::json error_json(const Error& e);

// Worker count: explicit value if positive, else LEEDIVIDE_JOBS, else the
// hardware concurrency.
int resolve_jobs(int requested);

// Runs f(i) for i in [0, n) on `jobs` threads. f must not throw.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& f);

struct BatchResult {
    std::vector<nlohmann::json> rows;  // input order
    nlohmann::json summary;
};

// One invariant report per entry; failures become rows with an "error" field.
BatchResult run_batch(const std::vector<TableEntry>& entries, const std::string& ring_id, int jobs);

std::string csv_header();
std::string csv_row(const nlohmann::json& row);
std::string csv_escape(const std::string& s);

}  // namespace leedivide
