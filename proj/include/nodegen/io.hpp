#pragma once

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "embedded.hpp"
#include "errors.hpp"
#include "metrics.hpp"
#include "nodes.hpp"
#include "shapes.hpp"
#include "sphere.hpp"

namespace nodegen::io {

/// Shortest text form that round-trips a double exactly (17 significant
/// digits).
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline double parse_double(const std::string& s) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw IoError("bad numeric field: " + s);
        return v;
    } catch (const std::exception&) {
        throw IoError("bad numeric field: " + s);
    }
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

/// Dimension-erased node rows as stored in node CSV files.
struct RawNodes {
    int dim = 2;
    std::vector<std::array<double, 3>> x;
    std::vector<NodeClass> cls;
    std::vector<int> owner;

    std::size_t size() const { return x.size(); }
};

template <int D>
RawNodes to_raw(const NodeList<D>& nodes) {
    RawNodes raw;
    raw.dim = D;
    raw.x.reserve(nodes.size());
    for (const auto& r : nodes) {
        std::array<double, 3> p{0.0, 0.0, 0.0};
        for (int j = 0; j < D; ++j) p[j] = r.x[j];
        raw.x.push_back(p);
        raw.cls.push_back(r.cls);
        raw.owner.push_back(r.owner);
    }
    return raw;
}

template <int D>
NodeList<D> from_raw(const RawNodes& raw) {
    if (raw.dim != D) throw IoError("node file dimension mismatch");
    NodeList<D> out;
    out.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        NodeRecord<D> r;
        for (int j = 0; j < D; ++j) r.x[j] = raw.x[i][j];
        r.cls = raw.cls[i];
        r.owner = raw.owner[i];
        out.push_back(r);
    }
    return out;
}

inline void write_nodes(std::ostream& os, const RawNodes& raw) {
    os << (raw.dim == 2 ? "x,y,class,owner\n" : "x,y,z,class,owner\n");
    for (std::size_t i = 0; i < raw.size(); ++i) {
        os << format_double(raw.x[i][0]) << ',' << format_double(raw.x[i][1]);
        if (raw.dim == 3) os << ',' << format_double(raw.x[i][2]);
        os << ',' << to_string(raw.cls[i]) << ',' << raw.owner[i] << '\n';
    }
}

inline void write_nodes(const std::string& path, const RawNodes& raw) {
    std::ofstream f(path);
    if (!f) throw IoError("cannot open for writing: " + path);
    write_nodes(f, raw);
}

inline RawNodes read_nodes(std::istream& is, const std::string& label = "<stream>") {
    std::string line;
    if (!std::getline(is, line)) throw IoError(label + ": empty node file");
    const auto header = split_csv_line(line);
    RawNodes raw;
    if (header.size() == 4 && header[0] == "x" && header[1] == "y" && header[2] == "class")
        raw.dim = 2;
    else if (header.size() == 5 && header[0] == "x" && header[1] == "y" && header[2] == "z" && header[3] == "class")
        raw.dim = 3;
    else
        throw IoError(label + ": bad node file header");
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != static_cast<std::size_t>(raw.dim) + 2)
            throw IoError(label + ": wrong column count on line " + std::to_string(lineno));
        std::array<double, 3> p{0.0, 0.0, 0.0};
        for (int j = 0; j < raw.dim; ++j) p[j] = parse_double(f[j]);
        raw.x.push_back(p);
        raw.cls.push_back(node_class_from(f[raw.dim]));
        raw.owner.push_back(static_cast<int>(parse_double(f[raw.dim + 1])));
    }
    return raw;
}

inline RawNodes read_nodes_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot open: " + path);
    return read_nodes(f, path);
}

inline void write_zmap(std::ostream& os, const MembershipMap& zmap) {
    os << "index,flag,owner\n";
    for (std::size_t i = 0; i < zmap.size(); ++i)
        os << i << ',' << zmap[i].inside << ',' << zmap[i].owner << '\n';
}

inline void write_zmap(const std::string& path, const MembershipMap& zmap) {
    std::ofstream f(path);
    if (!f) throw IoError("cannot open for writing: " + path);
    write_zmap(f, zmap);
}

inline MembershipMap read_zmap(std::istream& is, const std::string& label = "<stream>") {
    std::string line;
    if (!std::getline(is, line)) throw IoError(label + ": empty membership file");
    if (split_csv_line(line) != std::vector<std::string>{"index", "flag", "owner"})
        throw IoError(label + ": bad membership file header");
    MembershipMap zmap;
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != 3) throw IoError(label + ": wrong column count on line " + std::to_string(lineno));
        if (static_cast<std::size_t>(parse_double(f[0])) != zmap.size())
            throw IoError(label + ": non-contiguous index on line " + std::to_string(lineno));
        Membership m;
        m.inside = static_cast<int>(parse_double(f[1]));
        m.owner = static_cast<int>(parse_double(f[2]));
        if (m.inside != 0 && m.inside != 1) throw IoError(label + ": flag must be 0 or 1");
        if ((m.inside == 1) != (m.owner != 0)) throw IoError(label + ": flag/owner mismatch on line " + std::to_string(lineno));
        zmap.push_back(m);
    }
    return zmap;
}

inline MembershipMap read_zmap_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot open: " + path);
    return read_zmap(f, path);
}

/// Seed file: header x,y[,z][,lambda[,theta]]; parameters are optional.
/// When absent, 2D seeds get equispaced circle parameters in row order and
/// 3D seeds get spiral parameters in row order.
struct SeedFile {
    int dim = 2;
    std::vector<std::array<double, 3>> x;
    ParamSet params;      // filled when the file carries parameter columns
    bool has_params = false;
};

inline SeedFile read_seeds_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot open: " + path);
    std::string line;
    if (!std::getline(f, line)) throw IoError(path + ": empty seeds file");
    const auto header = split_csv_line(line);
    SeedFile out;
    if (header == std::vector<std::string>{"x", "y"}) {
        out.dim = 2;
    } else if (header == std::vector<std::string>{"x", "y", "lambda"}) {
        out.dim = 2;
        out.has_params = true;
    } else if (header == std::vector<std::string>{"x", "y", "z"}) {
        out.dim = 3;
    } else if (header == std::vector<std::string>{"x", "y", "z", "lambda", "theta"}) {
        out.dim = 3;
        out.has_params = true;
    } else {
        throw IoError(path + ": bad seeds file header");
    }
    out.params.sphere_dim = out.dim - 1;
    const std::size_t ncols = header.size();
    std::size_t lineno = 1;
    while (std::getline(f, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != ncols) throw IoError(path + ": wrong column count on line " + std::to_string(lineno));
        std::array<double, 3> p{0.0, 0.0, 0.0};
        for (int j = 0; j < out.dim; ++j) p[j] = parse_double(fields[j]);
        out.x.push_back(p);
        if (out.has_params) {
            out.params.lambda.push_back(parse_double(fields[out.dim]));
            if (out.dim == 3) out.params.theta.push_back(parse_double(fields[out.dim + 1]));
        }
    }
    return out;
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot open: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw IoError("cannot open for writing: " + path);
    f << text;
}

/// Peeks at a model file to learn its embedding dimension.
inline int model_file_dim(const std::string& path) {
    try {
        const auto j = nlohmann::json::parse(read_text_file(path));
        return j.at("dim").get<int>();
    } catch (const nlohmann::json::exception& e) {
        throw IoError(path + ": " + e.what());
    }
}

/// One entry of an embed spec file: either a named shape sampled at nd
/// parametric nodes, or a seeds CSV.
struct EmbedEntry {
    ShapeSpec shape;       // used when seeds_path is empty
    int nd = 0;
    std::string seeds_path;
    int m = 0;  // 0 -> kernel default for the dimension
};

/// Embed spec: JSON array of {"shape": name, "params": {...}, "nd": int,
/// "m": int} or {"seeds": "file.csv", "m": int}.
inline std::vector<EmbedEntry> read_embed_spec(const std::string& path) {
    std::vector<EmbedEntry> out;
    try {
        const auto j = nlohmann::json::parse(read_text_file(path));
        if (!j.is_array()) throw IoError(path + ": embed spec must be a JSON array");
        for (const auto& e : j) {
            EmbedEntry entry;
            if (e.contains("seeds")) {
                entry.seeds_path = e.at("seeds").get<std::string>();
            } else {
                entry.shape.name = e.at("shape").get<std::string>();
                if (e.contains("params"))
                    for (const auto& [k, v] : e.at("params").items()) entry.shape.params[k] = v.get<double>();
                entry.nd = e.at("nd").get<int>();
            }
            if (e.contains("m")) entry.m = e.at("m").get<int>();
            out.push_back(std::move(entry));
        }
    } catch (const nlohmann::json::exception& e) {
        throw IoError(path + ": " + e.what());
    }
    return out;
}

inline void write_histogram(std::ostream& os, const Histogram& h, double max_dist) {
    for (std::size_t i = 0; i < h.counts.size(); ++i)
        os << format_double(h.left_edges[i]) << ' ' << h.counts[i] << '\n';
    os << format_double(max_dist) << ' ' << h.overflow << '\n';
}

}  // namespace nodegen::io
