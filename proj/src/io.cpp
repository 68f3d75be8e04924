#include "zarex/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "zarex/errors.hpp"

namespace zarex {
namespace {

const Json& field(const Json& j, const char* key)
{
    if (!j.is_object()) throw SchemaError("expected a JSON object");
    auto it = j.find(key);
    if (it == j.end()) throw SchemaError(std::string("missing field \"") + key + "\"");
    return *it;
}

void check_schema(const Json& j)
{
    if (!j.is_object()) throw SchemaError("expected a JSON object");
    auto it = j.find("schema");
    if (it != j.end() && *it != kSchema) throw SchemaError("unsupported schema " + it->dump());
}

long long int_field(const Json& j, const char* key)
{
    const Json& v = field(j, key);
    if (!v.is_number_integer()) throw SchemaError(std::string("field \"") + key + "\" must be an integer");
    return v.get<long long>();
}

Point point_from_json(const Json& j, int dim)
{
    if (!j.is_array() || static_cast<int>(j.size()) != dim)
        throw SchemaError("point must be an array of " + std::to_string(dim) + " rationals");
    Point p;
    for (const auto& c : j) p.push_back(rat_from_json(c));
    return p;
}

Json point_to_json(const Point& p)
{
    Json out = Json::array();
    for (const auto& c : p) out.push_back(rat_to_json(c));
    return out;
}

Json points_to_json(const FinitePattern& p)
{
    Json out = Json::array();
    for (const auto& pt : p.points()) out.push_back(point_to_json(pt));
    return out;
}

std::vector<Point> points_from_json(const Json& j, int dim)
{
    if (!j.is_array() || j.empty()) throw SchemaError("\"points\" must be a nonempty array");
    std::vector<Point> pts;
    for (const auto& e : j) pts.push_back(point_from_json(e, dim));
    return pts;
}

std::vector<int> index_from_json(const Json& j, std::size_t dim)
{
    if (!j.is_array() || j.size() != dim) throw SchemaError("index tuple has the wrong length");
    std::vector<int> idx;
    for (const auto& v : j) {
        if (!v.is_number_integer()) throw SchemaError("indices must be integers");
        idx.push_back(v.get<int>() - 1);
    }
    return idx;
}

template <class F>
auto rewrap(F&& f) -> decltype(f())
{
    try {
        return f();
    } catch (const PreconditionError& e) {
        throw SchemaError(e.what());
    } catch (const std::out_of_range& e) {
        throw SchemaError(e.what());
    }
}

}  // namespace

Json rat_to_json(const Rat& r) { return r.str(); }

Rat rat_from_json(const Json& j)
{
    if (!j.is_string()) throw SchemaError("rationals must be strings such as \"3/2\", got " + j.dump());
    return Rat::parse(j.get<std::string>());
}

Json pattern_to_json(const Pattern& p)
{
    Json j;
    j["schema"] = kSchema;
    j["kind"] = kind_name(p);
    j["dim"] = pattern_dim(p);
    std::visit(
        [&](const auto& q) {
            using T = std::decay_t<decltype(q)>;
            if constexpr (std::is_same_v<T, FinitePattern>) {
                j["points"] = points_to_json(q);
            } else if constexpr (std::is_same_v<T, SegmentPattern>) {
                Json segs = Json::array();
                for (const auto& s : q.segments())
                    segs.push_back({{"y", rat_to_json(s.y)}, {"x_lo", rat_to_json(s.x_lo)}, {"x_hi", rat_to_json(s.x_hi)}});
                j["segments"] = segs;
            } else if constexpr (std::is_same_v<T, StackPattern>) {
                j["s"] = rat_to_json(q.s);
                j["t"] = q.t;
                j["c"] = rat_to_json(q.c);
            } else if constexpr (std::is_same_v<T, HSegment>) {
                j["c"] = rat_to_json(q.c);
            } else {
                j["points"] = points_to_json(q.base);
                j["anchor"] = point_to_json(q.base.points()[q.anchor]);
                j["length"] = rat_to_json(q.length);
            }
        },
        p);
    return j;
}

Pattern pattern_from_json(const Json& j)
{
    check_schema(j);
    const Json& kind = field(j, "kind");
    if (!kind.is_string()) throw SchemaError("\"kind\" must be a string");
    const std::string k = kind.get<std::string>();
    int dim = 2;
    if (j.contains("dim")) dim = static_cast<int>(int_field(j, "dim"));
    if (dim < 2) throw SchemaError("\"dim\" must be >= 2");
    if (k != "finite" && dim != 2) throw SchemaError("pattern kind \"" + k + "\" is two-dimensional");
    return rewrap([&]() -> Pattern {
        if (k == "finite") return FinitePattern(dim, points_from_json(field(j, "points"), dim));
        if (k == "segments") {
            const Json& arr = field(j, "segments");
            if (!arr.is_array()) throw SchemaError("\"segments\" must be an array");
            std::vector<Segment> segs;
            for (const auto& s : arr)
                segs.push_back({rat_from_json(field(s, "y")), rat_from_json(field(s, "x_lo")), rat_from_json(field(s, "x_hi"))});
            return SegmentPattern(std::move(segs));
        }
        if (k == "stack") {
            const long long t = int_field(j, "t");
            if (t < 2 || t > 64) throw SchemaError("stack \"t\" must be in [2, 64]");
            return StackPattern(rat_from_json(field(j, "s")), static_cast<int>(t), rat_from_json(field(j, "c")));
        }
        if (k == "hsegment") return HSegment(rat_from_json(field(j, "c")));
        if (k == "tailed") {
            FinitePattern base(2, points_from_json(field(j, "points"), 2));
            const Point anchor = point_from_json(field(j, "anchor"), 2);
            const auto& pts = base.points();
            auto it = std::find(pts.begin(), pts.end(), anchor);
            if (it == pts.end()) throw SchemaError("\"anchor\" is not one of the points");
            return TailedPattern(base, static_cast<std::size_t>(it - pts.begin()), rat_from_json(field(j, "length")));
        }
        throw SchemaError("unknown pattern kind \"" + k + "\"");
    });
}

Json matrix_to_json(const BitMatrix& m)
{
    Json ones = Json::array();
    for (const auto& idx : m.ones()) {
        Json e = Json::array();
        for (int v : idx) e.push_back(v + 1);
        ones.push_back(e);
    }
    return {{"schema", kSchema}, {"dims", m.dims()}, {"ones", ones}};
}

BitMatrix matrix_from_json(const Json& j)
{
    check_schema(j);
    const Json& dims_j = field(j, "dims");
    if (!dims_j.is_array() || dims_j.size() < 2) throw SchemaError("\"dims\" must list at least two axis lengths");
    std::vector<int> dims;
    for (const auto& v : dims_j) {
        if (!v.is_number_integer() || v.get<long long>() < 1 || v.get<long long>() > kMaxAxisLength)
            throw SchemaError("axis lengths must be integers in [1, 64]");
        dims.push_back(v.get<int>());
    }
    const Json& ones_j = field(j, "ones");
    if (!ones_j.is_array()) throw SchemaError("\"ones\" must be an array");
    return rewrap([&] {
        BitMatrix m(dims);
        for (const auto& e : ones_j) m.set(index_from_json(e, dims.size()), true);
        return m;
    });
}

Json region_to_json(const GridRegion& s)
{
    Json cells = Json::array();
    for (const auto& c : s.cells()) {
        Json e = Json::array();
        for (int v : c) e.push_back(v + 1);
        cells.push_back(e);
    }
    return {{"schema", kSchema}, {"d", s.d()}, {"n", rat_to_json(s.n())}, {"r", s.r()}, {"cells", cells}};
}

GridRegion region_from_json(const Json& j)
{
    check_schema(j);
    const long long d = int_field(j, "d");
    const long long r = int_field(j, "r");
    if (d < 2 || d > 8) throw SchemaError("\"d\" must be in [2, 8]");
    if (r < 1 || r > kMaxAxisLength) throw SchemaError("\"r\" must be in [1, 64]");
    const Rat n = rat_from_json(field(j, "n"));
    if (n.sign() <= 0) throw SchemaError("\"n\" must be positive");
    const Json& cells_j = field(j, "cells");
    if (!cells_j.is_array()) throw SchemaError("\"cells\" must be an array");
    return rewrap([&] {
        GridRegion s(static_cast<int>(d), n, static_cast<int>(r));
        for (const auto& e : cells_j) s.set(index_from_json(e, static_cast<std::size_t>(d)), true);
        return s;
    });
}

Json record_to_json(const ExtremalRecord& rec, bool timing)
{
    Json j;
    j["schema"] = kSchema;
    j["type"] = "extremal_record";
    j["kind"] = rec.kind;
    j["pattern_id"] = rec.pattern_id;
    j["n"] = rat_to_json(rec.n);
    j["d"] = rec.d;
    if (rec.r) j["r"] = *rec.r;
    j["value"] = rec.value;
    if (rec.measure) j["measure"] = rat_to_json(*rec.measure);
    j["bound"] = bound_name(rec.bound);
    j["method"] = rec.method;
    if (rec.certificate) j["certificate"] = matrix_to_json(*rec.certificate);
    if (rec.region) j["certificate"] = region_to_json(*rec.region);
    j["seed"] = rec.seed ? Json(*rec.seed) : Json(nullptr);
    j["symmetry_breaking"] = rec.symmetry_breaking;
    if (timing) j["elapsed_ms"] = rec.elapsed_ms;
    return j;
}

ExtremalRecord record_from_json(const Json& j)
{
    check_schema(j);
    ExtremalRecord rec;
    rec.kind = field(j, "kind").get<std::string>();
    rec.pattern_id = field(j, "pattern_id").get<std::string>();
    rec.n = rat_from_json(field(j, "n"));
    rec.d = static_cast<int>(int_field(j, "d"));
    if (j.contains("r")) rec.r = static_cast<int>(int_field(j, "r"));
    rec.value = int_field(j, "value");
    if (j.contains("measure")) rec.measure = rat_from_json(j["measure"]);
    const std::string b = field(j, "bound").get<std::string>();
    if (b == "exact")
        rec.bound = BoundKind::exact;
    else if (b == "lower")
        rec.bound = BoundKind::lower;
    else if (b == "upper")
        rec.bound = BoundKind::upper;
    else
        throw SchemaError("unknown bound kind \"" + b + "\"");
    rec.method = field(j, "method").get<std::string>();
    if (j.contains("certificate")) {
        if (rec.kind == "px")
            rec.region = region_from_json(j["certificate"]);
        else
            rec.certificate = matrix_from_json(j["certificate"]);
    }
    if (j.contains("seed") && !j["seed"].is_null()) rec.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("symmetry_breaking")) rec.symmetry_breaking = j["symmetry_breaking"].get<bool>();
    if (j.contains("elapsed_ms")) rec.elapsed_ms = j["elapsed_ms"].get<std::int64_t>();
    return rec;
}

Json report_to_json(const CheckReport& rep)
{
    Json j;
    j["schema"] = kSchema;
    j["type"] = "check_report";
    j["check_id"] = rep.check_id;
    j["params"] = rep.params;
    j["lhs"] = rat_to_json(rep.lhs);
    j["rhs"] = rat_to_json(rep.rhs);
    Json dec = {{"lhs", decimal(rep.lhs)}, {"rhs", decimal(rep.rhs)}};
    if (rep.mid) {
        j["mid"] = rat_to_json(*rep.mid);
        dec["mid"] = decimal(*rep.mid);
    }
    j["decimal"] = dec;
    j["relation"] = relation_symbol(rep.relation);
    j["pass"] = rep.pass();
    j["artifacts"] = rep.artifacts;
    j["note"] = rep.note;
    return j;
}

CheckReport report_from_json(const Json& j)
{
    check_schema(j);
    CheckReport rep;
    rep.check_id = field(j, "check_id").get<std::string>();
    if (j.contains("params")) rep.params = j["params"].get<std::map<std::string, std::string>>();
    rep.lhs = rat_from_json(field(j, "lhs"));
    rep.rhs = rat_from_json(field(j, "rhs"));
    if (j.contains("mid")) rep.mid = rat_from_json(j["mid"]);
    const std::string rel = field(j, "relation").get<std::string>();
    if (rel == "<=")
        rep.relation = Relation::le;
    else if (rel == ">=")
        rep.relation = Relation::ge;
    else if (rel == "=")
        rep.relation = Relation::eq;
    else
        throw SchemaError("unknown relation \"" + rel + "\"");
    if (j.contains("artifacts")) rep.artifacts = j["artifacts"].get<std::vector<std::string>>();
    if (j.contains("note")) rep.note = j["note"].get<std::string>();
    return rep;
}

std::string canonical(const Json& j) { return j.dump(); }

std::uint64_t fnv1a64(std::string_view bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string pattern_id(const Pattern& p)
{
    Json j = pattern_to_json(p);
    j.erase("schema");
    return hex64(fnv1a64(canonical(j)));
}

std::string pattern_id(const BitMatrix& m)
{
    Json j = matrix_to_json(m);
    j.erase("schema");
    return hex64(fnv1a64(canonical(j)));
}

std::string decimal(const Rat& r, int digits)
{
    __int128 num = r.num();
    const __int128 den = r.den();
    std::string sign = num < 0 ? "-" : "";
    if (num < 0) num = -num;
    __int128 whole = num / den;
    __int128 rem = num % den;
    auto to_string = [](__int128 v) {
        if (v == 0) return std::string("0");
        std::string s;
        while (v > 0) {
            s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
            v /= 10;
        }
        return s;
    };
    std::string out = sign + to_string(whole);
    if (digits > 0) {
        out += '.';
        for (int i = 0; i < digits; ++i) {
            rem *= 10;
            out += static_cast<char>('0' + static_cast<int>(rem / den));
            rem %= den;
        }
    }
    return out;
}

Json read_json_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw SchemaError(path.string() + ": " + e.what());
    }
}

void write_text_file(const std::filesystem::path& path, const std::string& text)
{
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << text;
    if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace zarex
