#include "leedivide/table.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "leedivide/invariant.hpp"

namespace leedivide {

nlohmann::json error_json(const Error& e) {
    return {{"code", std::string(error_code_name(e.code()))}, {"message", e.what()}};
}

namespace {

// Split one CSV record; quotes may wrap a field and "" is a literal quote.
std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                out.back() += '"';
                ++i;
            } else if (ch == '"') {
                quoted = false;
            } else {
                out.back() += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            out.emplace_back();
        } else if (ch != '\r') {
            out.back() += ch;
        }
    }
    if (quoted) throw Error(ErrorCode::ParseError, "unterminated quote");
    return out;
}

bool blank(const std::string& s) {
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

TableEntry entry_from_json_line(const std::string& line, std::size_t lineno) {
    TableEntry e;
    e.name = "row" + std::to_string(lineno);
    try {
        e.extra = nlohmann::json::parse(line);
        if (e.extra.is_object() && e.extra.contains("name") && e.extra["name"].is_string())
            e.name = e.extra["name"].get<std::string>();
        e.diagram = e.extra.is_object() && e.extra.contains("pd") && e.extra["pd"].is_string()
                        ? parse_pd(e.extra["pd"].get<std::string>())
                        : parse_pd_json(e.extra);
        e.diagram->set_name(e.name);
    } catch (const nlohmann::json::exception& ex) {
        e.error = {{"code", "PARSE_ERROR"}, {"message", std::string("bad JSON: ") + ex.what()}};
    } catch (const Error& ex) {
        e.error = error_json(ex);
    }
    return e;
}

}  // namespace

std::vector<TableEntry> read_table(std::istream& in, TableFormat format) {
    std::vector<TableEntry> out;
    std::string line;
    std::size_t lineno = 0;
    if (format == TableFormat::Jsonl) {
        while (std::getline(in, line)) {
            ++lineno;
            if (!blank(line)) out.push_back(entry_from_json_line(line, lineno));
        }
        return out;
    }
    int name_col = -1, pd_col = -1;
    while (std::getline(in, line)) {
        ++lineno;
        if (blank(line)) continue;
        TableEntry e;
        e.name = "row" + std::to_string(lineno);
        try {
            const auto f = split_csv(line);
            if (pd_col < 0) {
                for (std::size_t i = 0; i < f.size(); ++i) {
                    if (f[i] == "name") name_col = static_cast<int>(i);
                    if (f[i] == "pd") pd_col = static_cast<int>(i);
                }
                if (pd_col < 0) throw Error(ErrorCode::ParseError, "CSV header needs a 'pd' column");
                continue;
            }
            if (name_col >= 0 && static_cast<std::size_t>(name_col) < f.size()) e.name = f[static_cast<std::size_t>(name_col)];
            if (static_cast<std::size_t>(pd_col) >= f.size()) throw Error(ErrorCode::ParseError, "row has no pd field");
            e.diagram = parse_pd(f[static_cast<std::size_t>(pd_col)]);
            e.diagram->set_name(e.name);
        } catch (const Error& ex) {
            if (pd_col < 0) throw;
            e.error = error_json(ex);
        }
        out.push_back(std::move(e));
    }
    return out;
}

std::vector<TableEntry> read_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
    const bool csv = path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
    return read_table(in, csv ? TableFormat::Csv : TableFormat::Jsonl);
}

std::string data_dir() {
    if (const char* d = std::getenv("LEEDIVIDE_DATA")) return d;
    return LEEDIVIDE_DATA_DIR;
}

std::vector<TableEntry> bundled_knots(int max_crossings) {
    std::vector<TableEntry> out;
    for (TableEntry& e : read_table(data_dir() + "/knots-up-to-9.jsonl"))
        if (e.diagram && e.diagram->crossing_count() <= max_crossings) out.push_back(std::move(e));
    return out;
}

int resolve_jobs(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("LEEDIVIDE_JOBS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    return std::max(1U, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& f) {
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) f(i);
        });
    for (auto& t : pool) t.join();
}

BatchResult run_batch(const std::vector<TableEntry>& entries, const std::string& ring_id, int jobs) {
    if (ring_id != "Z2" && ring_id != "Qh")
        throw Error(ErrorCode::UnknownRing, "unknown ring '" + ring_id + "' (expected Z2 or Qh)");
    BatchResult out;
    out.rows.resize(entries.size());
    parallel_for(entries.size(), jobs, [&](std::size_t i) {
        const TableEntry& e = entries[i];
        nlohmann::json row;
        if (!e.diagram) {
            row = {{"name", e.name}, {"ring", ring_id}, {"error", e.error}};
        } else {
            try {
                row = invariant_report(*e.diagram, ring_id).to_json();
            } catch (const Error& ex) {
                row = {{"name", e.name}, {"ring", ring_id}, {"error", error_json(ex)}};
            } catch (const std::exception& ex) {
                row = {{"name", e.name}, {"ring", ring_id}, {"error", {{"code", "INTERNAL"}, {"message", ex.what()}}}};
            }
        }
        out.rows[i] = std::move(row);
    });
    long ok = 0;
    double max_ms = 0;
    for (const auto& r : out.rows) {
        if (!r.contains("error")) ++ok;
        if (r.contains("ms")) max_ms = std::max(max_ms, r["ms"].get<double>());
    }
    out.summary = {{"summary", true},
                   {"ring", ring_id},
                   {"rows", out.rows.size()},
                   {"ok", ok},
                   {"errors", static_cast<long>(out.rows.size()) - ok},
                   {"max_ms", max_ms}};
    return out;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string csv_header() { return "name,ring,n,w,r,components,k_c,s_bar,k_tilde,torsion,ms,error"; }

std::string csv_row(const nlohmann::json& row) {
    auto field = [&](const char* key) -> std::string {
        if (!row.contains(key)) return "";
        const auto& v = row[key];
        if (v.is_string()) return v.get<std::string>();
        if (v.is_number_float()) {
            std::ostringstream os;
            os.precision(3);
            os << std::fixed << v.get<double>();
            return os.str();
        }
        return v.dump();
    };
    std::string torsion;
    if (row.contains("torsion"))
        for (const auto& t : row["torsion"]) torsion += (torsion.empty() ? "" : ";") + t.get<std::string>();
    std::string err;
    if (row.contains("error")) err = row["error"]["code"].get<std::string>() + ": " + row["error"]["message"].get<std::string>();
    std::string out = csv_escape(field("name"));
    for (const char* k : {"ring", "n", "w", "r", "components", "k_c", "s_bar", "k_tilde"}) out += "," + csv_escape(field(k));
    out += "," + csv_escape(torsion) + "," + csv_escape(field("ms")) + "," + csv_escape(err);
    return out;
}

}  // namespace leedivide
