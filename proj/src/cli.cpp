#include "zarex/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "../tools/fixtures.hpp"
#include "zarex/cache.hpp"
#include "zarex/constructions.hpp"
#include "zarex/errors.hpp"
#include "zarex/extremal.hpp"
#include "zarex/io.hpp"
#include "zarex/px_search.hpp"
#include "zarex/verify.hpp"

namespace zarex::cli {
namespace {

const char* kExitCodes =
    "Exit codes:\n"
    "  0  success\n"
    "  1  a verification check failed\n"
    "  2  usage error\n"
    "  3  schema violation in an input document or rational\n"
    "  4  size guard exceeded (use a heuristic mode)\n"
    "  5  unknown check id\n"
    "  6  precondition violated (alignment, parameter range, ...)\n"
    "  7  file or cache i/o error\n";

class UnknownCheck : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Global {
    int threads = 1;
    std::string cache_dir;
    bool no_cache = false;
    bool timing = false;
};

Rat parse_rat_arg(const std::string& name, const std::string& text)
{
    try {
        return Rat::parse(text);
    } catch (const SchemaError& e) {
        throw SchemaError("--" + name + ": " + e.what());
    }
}

Cache open_cache(const Global& g) { return Cache(g.cache_dir.empty() ? Cache::default_dir() : std::filesystem::path(g.cache_dir)); }

// Looks up `key` unless caching is off; otherwise computes, stores, returns.
template <class F>
Json cached(const Global& g, const std::string& op, const Json& params, F&& compute)
{
    if (g.no_cache) return compute();
    Cache cache = open_cache(g);
    const std::string key = Cache::key(op, params);
    if (!g.timing)
        if (auto hit = cache.lookup(key)) return *hit;
    Json rec = compute();
    cache.append(key, rec);
    return rec;
}

void print(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

std::string csv_cell(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

std::string field_text(const Json& j, const char* key)
{
    if (!j.contains(key) || j[key].is_null()) return "";
    const Json& v = j[key];
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"zarex: forbidden-pattern extremal functions for 0-1 matrices and open grid regions", "zarex"};
    app.footer(kExitCodes);
    app.require_subcommand(1);
    Global g;
    app.add_option("--threads", g.threads, "worker threads for exact search")->check(CLI::Range(1, 256));
    app.add_option("--cache-dir", g.cache_dir, "cache directory (default: $ZAREX_CACHE_DIR)");
    app.add_flag("--no-cache", g.no_cache, "neither read nor write the cache");
    app.add_flag("--timing", g.timing, "include elapsed_ms in records (bypasses cache reads)");

    // ex
    auto* ex = app.add_subcommand("ex", "ex(n, M, d): exact, heuristic or random-deletion");
    std::string ex_matrix, ex_mode = "exact", ex_p;
    int ex_n = 0, ex_d = 0, ex_r = 2, ex_iterations = -1;
    std::uint64_t ex_seed = 0;
    bool ex_sym = false;
    ex->add_option("--matrix", ex_matrix, "forbidden matrix JSON file");
    ex->add_option("--n", ex_n, "side length")->required()->check(CLI::Range(1, 64));
    ex->add_option("--d", ex_d, "dimension (must match the matrix)");
    ex->add_option("--mode", ex_mode, "exact | heuristic | random-deletion")
        ->check(CLI::IsMember({"exact", "heuristic", "random-deletion"}));
    ex->add_option("--seed", ex_seed, "seed for randomized modes");
    ex->add_option("--r", ex_r, "J_{r,r} size for random-deletion")->check(CLI::Range(2, 64));
    ex->add_option("--p", ex_p, "sampling probability p/q for random-deletion");
    ex->add_option("--iterations", ex_iterations, "local-search iterations for heuristic mode");
    ex->add_flag("--symmetry-breaking", ex_sym, "order slabs lexicographically (identical-slab patterns only)");

    // px-search
    auto* px = app.add_subcommand("px-search", "largest P-free union of open grid cells");
    std::string px_pattern, px_n = "", px_method = "exact";
    int px_r = 0, px_sweeps = 200;
    std::uint64_t px_seed = 0;
    px->add_option("--pattern", px_pattern, "pattern JSON file")->required();
    px->add_option("--n", px_n, "side length (rational)")->required();
    px->add_option("--r", px_r, "resolution")->required()->check(CLI::Range(1, 64));
    px->add_option("--method", px_method, "exact | greedy | anneal")->check(CLI::IsMember({"exact", "greedy", "anneal"}));
    px->add_option("--seed", px_seed, "seed for greedy and anneal");
    px->add_option("--sweeps", px_sweeps, "annealing sweeps over all cells")->check(CLI::Range(1, 1000000));

    // construct
    auto* con = app.add_subcommand("construct", "explicit regions and patterns");
    std::string con_kind, con_c, con_a, con_b, con_n, con_matrix, con_region, con_grid = "q";
    int con_r = 0;
    con->add_option("--kind", con_kind, "strip | lshape | from-matrix | grid-pattern | lift")
        ->required()
        ->check(CLI::IsMember({"strip", "lshape", "from-matrix", "grid-pattern", "lift"}));
    con->add_option("--c", con_c, "strip width, cell side, or grid extent");
    con->add_option("--a", con_a, "L-shape vertical arm width");
    con->add_option("--b", con_b, "L-shape horizontal arm height");
    con->add_option("--n", con_n, "side length");
    con->add_option("--r", con_r, "resolution, or grid pattern size");
    con->add_option("--matrix", con_matrix, "matrix JSON for from-matrix");
    con->add_option("--region", con_region, "region JSON for lift");
    con->add_option("--grid", con_grid, "q (points ic/r) or h (integer points)")->check(CLI::IsMember({"q", "h"}));

    // verify
    auto* ver = app.add_subcommand("verify", "run named inequality checks");
    std::string ver_check = "all", ver_regen;
    std::vector<std::string> ver_params;
    std::uint64_t ver_seed = 42;
    bool ver_list = false;
    ver->add_option("--check", ver_check, "check id or 'all'");
    ver->add_option("--params", ver_params, "parameter overrides k=v")->expected(1, -1);
    ver->add_option("--seed", ver_seed, "seed for Monte-Carlo checks");
    ver->add_flag("--list", ver_list, "list checks and default parameters");
    ver->add_option("--regen-fixtures", ver_regen, "recompute oracle fixtures into this directory");

    // report
    auto* rep = app.add_subcommand("report", "export cached records");
    std::string rep_format = "csv", rep_input;
    rep->add_option("--format", rep_format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    rep->add_option("--input", rep_input, "JSON array or JSON-lines file (default: the cache)");

    // cache
    auto* cache_cmd = app.add_subcommand("cache", "inspect or clear the result cache");
    std::string cache_action;
    cache_cmd->add_option("action", cache_action, "clear | list | path")->required()->check(CLI::IsMember({"clear", "list", "path"}));

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }

    try {
        if (ex->parsed()) {
            std::optional<BitMatrix> m;
            if (ex_mode != "random-deletion") {
                if (ex_matrix.empty()) throw CLI::ValidationError("--matrix is required for mode " + ex_mode);
                m = matrix_from_json(read_json_file(ex_matrix));
                if (ex_d != 0 && ex_d != m->dim())
                    throw SchemaError("--d " + std::to_string(ex_d) + " does not match the matrix dimension " + std::to_string(m->dim()));
            }
            Json params = {{"n", ex_n}, {"mode", ex_mode}};
            if (m) params["matrix"] = matrix_to_json(*m);
            Json rec;
            if (ex_mode == "exact") {
                params["symmetry_breaking"] = ex_sym;
                rec = cached(g, "ex", params, [&] {
                    ExactOptions o;
                    o.threads = g.threads;
                    o.symmetry_breaking = ex_sym;
                    return record_to_json(ex_exact(ex_n, *m, o), g.timing);
                });
            } else if (ex_mode == "heuristic") {
                params["seed"] = ex_seed;
                params["iterations"] = ex_iterations;
                rec = cached(g, "ex", params, [&] { return record_to_json(ex_lower_heuristic(ex_n, *m, ex_seed, ex_iterations), g.timing); });
            } else {
                std::optional<Rat> p;
                if (!ex_p.empty()) p = parse_rat_arg("p", ex_p);
                params["seed"] = ex_seed;
                params["r"] = ex_r;
                params["p"] = p ? rat_to_json(*p) : Json(nullptr);
                rec = cached(g, "ex", params, [&] { return record_to_json(ex_lower_random_deletion(ex_n, ex_r, p, ex_seed), g.timing); });
            }
            print(out, rec);
            return kOk;
        }

        if (px->parsed()) {
            const Pattern pattern = pattern_from_json(read_json_file(px_pattern));
            const Rat n = parse_rat_arg("n", px_n);
            PxOptions o;
            o.method = parse_px_method(px_method);
            o.seed = px_seed;
            o.threads = g.threads;
            o.anneal.sweeps = px_sweeps;
            Json params = {{"pattern", pattern_to_json(pattern)}, {"n", rat_to_json(n)}, {"r", px_r}, {"method", px_method}};
            if (o.method != PxMethod::exact) params["seed"] = px_seed;
            if (o.method == PxMethod::anneal) params["sweeps"] = px_sweeps;
            print(out, cached(g, "px-search", params, [&] { return record_to_json(px_lower_search(n, px_r, pattern, o), g.timing); }));
            return kOk;
        }

        if (con->parsed()) {
            auto need = [&](const std::string& v, const char* name) {
                if (v.empty()) throw CLI::ValidationError(std::string("--") + name + " is required for --kind " + con_kind);
                return parse_rat_arg(name, v);
            };
            auto need_r = [&] {
                if (con_r < 1) throw CLI::ValidationError("--r is required for --kind " + con_kind);
                return con_r;
            };
            auto emit_region = [&](const GridRegion& s) {
                Json j = region_to_json(s);
                j["measure"] = rat_to_json(region_measure(s));
                print(out, j);
            };
            if (con_kind == "strip") {
                emit_region(strip(need(con_c, "c"), need(con_n, "n"), need_r()));
            } else if (con_kind == "lshape") {
                emit_region(lshape(need(con_a, "a"), need(con_b, "b"), need(con_n, "n"), need_r()));
            } else if (con_kind == "from-matrix") {
                if (con_matrix.empty()) throw CLI::ValidationError("--matrix is required for --kind from-matrix");
                emit_region(region_from_matrix(matrix_from_json(read_json_file(con_matrix)), need(con_c, "c"), need(con_n, "n")));
            } else if (con_kind == "grid-pattern") {
                const int r = need_r();
                print(out, pattern_to_json(con_grid == "h" ? grid_pattern_h(r) : grid_pattern_q(r, need(con_c, "c"))));
            } else {
                if (con_region.empty()) throw CLI::ValidationError("--region is required for --kind lift");
                emit_region(product_lift(region_from_json(read_json_file(con_region))));
            }
            return kOk;
        }

        if (ver->parsed()) {
            if (!ver_regen.empty()) {
                Json written = Json::array();
                for (const auto& p : fixtures::regenerate(ver_regen)) written.push_back(p.string());
                print(out, written);
                return kOk;
            }
            if (ver_list) {
                Json list = Json::array();
                for (const auto& c : check_registry()) list.push_back({{"id", c.id}, {"summary", c.summary}, {"defaults", c.defaults}});
                print(out, list);
                return kOk;
            }
            Params overrides;
            for (const auto& kv : ver_params) {
                auto eq = kv.find('=');
                if (eq == std::string::npos || eq == 0) throw CLI::ValidationError("--params expects k=v, got \"" + kv + "\"");
                overrides[kv.substr(0, eq)] = kv.substr(eq + 1);
            }
            std::vector<const CheckInfo*> selected;
            if (ver_check == "all") {
                for (const auto& c : check_registry()) selected.push_back(&c);
                for (const auto& [k, v] : overrides) {
                    bool used = false;
                    for (auto* c : selected) used = used || c->defaults.count(k);
                    if (!used) throw PreconditionError("no check has a parameter \"" + k + "\"");
                }
            } else {
                const CheckInfo* c = find_check(ver_check);
                if (!c) throw UnknownCheck("unknown check id \"" + ver_check + "\"");
                selected.push_back(c);
            }
            CheckContext ctx;
            ctx.seed = ver_seed;
            ctx.threads = g.threads;
            Json reports = Json::array();
            bool all_pass = true;
            for (auto* c : selected) {
                Params mine;
                for (const auto& [k, v] : overrides)
                    if (c->defaults.count(k)) mine[k] = v;
                for (const auto& r : run_check(*c, mine, ctx)) {
                    all_pass = all_pass && r.pass();
                    Json j = report_to_json(r);
                    if (!g.no_cache) {
                        Json key_params = {{"check", c->id}, {"params", r.params}, {"seed", ver_seed}};
                        open_cache(g).append(Cache::key("verify", key_params), j);
                    }
                    reports.push_back(std::move(j));
                }
            }
            print(out, reports);
            return all_pass ? kOk : kCheckFailed;
        }

        if (rep->parsed()) {
            std::vector<Json> records;
            if (rep_input.empty()) {
                for (auto& e : open_cache(g).entries())
                    if (e.contains("record")) records.push_back(e["record"]);
            } else {
                std::ifstream in(rep_input);
                if (!in) throw IoError("cannot open " + rep_input);
                std::stringstream buf;
                buf << in.rdbuf();
                const std::string text = buf.str();
                try {
                    Json whole = Json::parse(text);
                    if (whole.is_array())
                        for (auto& r : whole) records.push_back(r);
                    else
                        records.push_back(whole);
                } catch (const Json::parse_error&) {
                    std::istringstream lines(text);
                    for (std::string line; std::getline(lines, line);) {
                        if (line.empty()) continue;
                        Json e = Json::parse(line);
                        records.push_back(e.contains("record") ? e["record"] : e);
                    }
                }
            }
            // Validate every record against its schema before exporting.
            for (const auto& r : records) {
                if (r.value("type", "") == "check_report")
                    report_from_json(r);
                else
                    record_from_json(r);
            }
            if (rep_format == "json") {
                print(out, Json(records));
                return kOk;
            }
            const std::vector<const char*> cols = {"type", "kind", "pattern_id", "check_id", "n", "d", "r", "value", "measure",
                                                   "bound", "method", "seed", "lhs", "mid", "rhs", "relation", "pass"};
            for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
            out << "\n";
            for (const auto& r : records) {
                for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << csv_cell(field_text(r, cols[i]));
                out << "\n";
            }
            return kOk;
        }

        if (cache_cmd->parsed()) {
            Cache cache = open_cache(g);
            if (cache_action == "path")
                out << cache.file().string() << "\n";
            else if (cache_action == "clear")
                cache.clear();
            else
                for (const auto& e : cache.entries()) out << canonical(e) << "\n";
            return kOk;
        }
    } catch (const CLI::ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const UnknownCheck& e) {
        err << "error: " << e.what() << "\n";
        return kUnknownCheck;
    } catch (const SchemaError& e) {
        err << "schema error: " << e.what() << "\n";
        return kSchema;
    } catch (const Json::exception& e) {
        err << "schema error: " << e.what() << "\n";
        return kSchema;
    } catch (const GuardError& e) {
        err << "guard: " << e.what() << "\n";
        return kGuard;
    } catch (const PreconditionError& e) {
        err << "precondition: " << e.what() << "\n";
        return kPrecondition;
    } catch (const IoError& e) {
        err << "io error: " << e.what() << "\n";
        return kIo;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "io error: " << e.what() << "\n";
        return kIo;
    }
    return kUsage;
}

}  // namespace zarex::cli
