#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "geocur/current.hpp"
#include "geocur/earthquake.hpp"
#include "geocur/errors.hpp"
#include "geocur/lamination.hpp"
#include "geocur/liouville.hpp"
#include "geocur/mobius.hpp"

namespace geocur {

using json = nlohmann::json;

/// Fixed float formatting so identical runs produce byte-identical output.
inline std::string fmt_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

// ---------------------------------------------------------------------------
// JSON serialization
// ---------------------------------------------------------------------------

inline json to_json(const MobiusMap& m) {
    MobiusMap c = m.canonical_sign();
    return json{{"u_re", c.u().real()}, {"u_im", c.u().imag()},
                {"v_re", c.v().real()}, {"v_im", c.v().imag()}};
}

inline MobiusMap mobius_from_json(const json& j) {
    return MobiusMap(cplx(j.at("u_re").get<double>(), j.at("u_im").get<double>()),
                     cplx(j.at("v_re").get<double>(), j.at("v_im").get<double>()));
}

inline json to_json(BoundaryPoint p) { return json(p.angle); }

inline json to_json(const Box& Q) {
    return json{Q.a().angle, Q.b().angle, Q.c().angle, Q.d().angle};
}

inline Box box_from_json(const json& j) {
    return Box::from_angles(j.at(0).get<double>(), j.at(1).get<double>(),
                            j.at(2).get<double>(), j.at(3).get<double>());
}

inline json to_json(const CircleMap& h) {
    json recs = json::array();
    if (h.breakpoints().empty()) {
        recs.push_back({{"breakpoint", nullptr}, {"map", to_json(h.pieces()[0])}});
    } else {
        for (std::size_t i = 0; i < h.breakpoints().size(); ++i)
            recs.push_back({{"breakpoint", h.breakpoints()[i]},
                            {"map", to_json(h.pieces()[i])}});
    }
    return recs;
}

// ---------------------------------------------------------------------------
// Lamination files: one record per leaf, "p q weight" with p < q.
// ---------------------------------------------------------------------------

inline void save_lamination(const FiniteLamination& lam, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open lamination file for writing: " + path);
    out << "# endpoint_p endpoint_q weight\n";
    for (const auto& l : lam.leaves)
        out << fmt_double(l.geodesic.p.angle) << ' ' << fmt_double(l.geodesic.q.angle)
            << ' ' << fmt_double(l.weight) << '\n';
}

inline FiniteLamination load_lamination(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open lamination file: " + path);
    FiniteLamination lam;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        double p, q, w;
        if (!(ss >> p >> q >> w))
            throw ConfigError("malformed lamination record: " + line);
        lam.leaves.emplace_back(Geodesic(BoundaryPoint(p), BoundaryPoint(q)), w);
    }
    require_valid(lam);
    return lam;
}

inline FiniteLamination lamination_from_json(const json& j) {
    FiniteLamination lam;
    for (const auto& rec : j)
        lam.leaves.emplace_back(Geodesic(BoundaryPoint(rec.at(0).get<double>()),
                                         BoundaryPoint(rec.at(1).get<double>())),
                                rec.at(2).get<double>());
    require_valid(lam);
    return lam;
}

// ---------------------------------------------------------------------------
// Current descriptors: {"kind": "pullback"|"lamination"|"scaled"|"liouville"}
// ---------------------------------------------------------------------------

inline Current current_from_json(const json& j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "liouville") return Current::liouville_base();
    if (kind == "lamination") {
        BoundaryMode mode = BoundaryMode::include;
        if (j.contains("boundary") && j.at("boundary").get<std::string>() == "exclude")
            mode = BoundaryMode::exclude;
        return Current::lamination(lamination_from_json(j.at("leaves")), mode);
    }
    if (kind == "scaled")
        return Current::scaled(j.at("factor").get<double>(),
                               current_from_json(j.at("inner")));
    if (kind == "pullback") {
        FiniteLamination lam = lamination_from_json(j.at("leaves"));
        double t = j.value("scale", 1.0);
        BoundaryPoint base(j.value("base_ref", 0.5 * std::numbers::pi));
        return Current::pullback(
            earthquake_boundary_map(build_earthquake(lam.scaled(t), base)));
    }
    throw ConfigError("unknown current kind: " + kind);
}

// ---------------------------------------------------------------------------
// CSV tables
// ---------------------------------------------------------------------------

class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header) : header_(std::move(header)) {}

    void add_row(std::vector<std::string> cells) { rows_.push_back(std::move(cells)); }

    std::string str() const {
        std::ostringstream out;
        write_line(out, header_);
        for (const auto& r : rows_) write_line(out, r);
        return out.str();
    }

    void save(const std::string& path) const {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw ConfigError("cannot open output file: " + path);
        out << str();
    }

private:
    static void write_line(std::ostringstream& out, const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out << ',';
            out << cells[i];
        }
        out << '\n';
    }

    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

}  // namespace geocur
