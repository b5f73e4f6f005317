#ifndef COGMAP_CSV_HPP
#define COGMAP_CSV_HPP

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cogmap/diagnostics.hpp"
#include "cogmap/dynamics.hpp"
#include "cogmap/format.hpp"
#include "cogmap/grid.hpp"

namespace cogmap {

namespace detail {

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw config_error("csv: cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw config_error("csv: write failed for '" + path + "'");
}

} // namespace detail

// Rows ordered by (t, x); values in shortest round-trip decimal form.
inline std::string profile_csv_text(const Grid1D& grid, const std::vector<Snapshot>& snapshots,
                                    const Field& sbar, const Field& s) {
    std::string out = "t,x,u,m,sbar,s\n";
    for (const Snapshot& snap : snapshots) {
        for (int i = 0; i < grid.n_cells; ++i) {
            const std::size_t k = static_cast<std::size_t>(i);
            out += format_double(snap.t);
            out += ',';
            out += format_double(grid.centers[k]);
            out += ',';
            out += format_double(snap.u[k]);
            out += ',';
            out += format_double(snap.m[k]);
            out += ',';
            out += format_double(sbar[k]);
            out += ',';
            out += format_double(s[k]);
            out += '\n';
        }
    }
    return out;
}

inline void emit_profile_csv(const std::string& path, const Grid1D& grid,
                             const std::vector<Snapshot>& snapshots, const Field& sbar,
                             const Field& s) {
    detail::write_text_file(path, profile_csv_text(grid, snapshots, sbar, s));
}

// Steady profiles carry their scalar metadata as a leading comment row.
inline std::string steady_csv_text(const Grid1D& grid, const Field& u, const Field& m,
                                   const Field& sbar, const Field& s,
                                   const std::string& metadata) {
    std::string out;
    if (!metadata.empty()) out += "# " + metadata + "\n";
    out += "x,u,m,sbar,s\n";
    for (int i = 0; i < grid.n_cells; ++i) {
        const std::size_t k = static_cast<std::size_t>(i);
        out += format_double(grid.centers[k]);
        out += ',';
        out += format_double(u[k]);
        out += ',';
        out += format_double(m[k]);
        out += ',';
        out += format_double(sbar[k]);
        out += ',';
        out += format_double(s[k]);
        out += '\n';
    }
    return out;
}

inline void emit_steady_csv(const std::string& path, const Grid1D& grid, const Field& u,
                            const Field& m, const Field& sbar, const Field& s,
                            const std::string& metadata) {
    detail::write_text_file(path, steady_csv_text(grid, u, m, sbar, s, metadata));
}

inline std::string report_csv_text(const std::vector<SweepPoint>& points) {
    std::string out = "alpha,mu,max_u,argmax_x,total_u,total_s,K,residual,status\n";
    for (const SweepPoint& p : points) {
        out += format_double(p.alpha);
        out += ',';
        out += format_double(p.mu);
        out += ',';
        out += format_double(p.max_u);
        out += ',';
        out += format_double(p.argmax_x);
        out += ',';
        out += format_double(p.total_u);
        out += ',';
        out += format_double(p.total_s);
        out += ',';
        out += format_double(p.K);
        out += ',';
        out += format_double(p.residual);
        out += ',';
        out += (p.ok ? "ok" : "failed");
        out += '\n';
    }
    return out;
}

inline void emit_report_csv(const std::string& path, const std::vector<SweepPoint>& points) {
    detail::write_text_file(path, report_csv_text(points));
}

// --- reading (round-trip checks, plotting) --------------------------------

struct CsvTable {
    std::vector<std::string> comments;  // leading '#' rows, verbatim
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

inline CsvTable read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw config_error("csv: cannot open '" + path + "'");
    CsvTable table;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!header_seen && !line.empty() && line[0] == '#') {
            table.comments.push_back(line);
            continue;
        }
        std::vector<std::string> fields;
        std::string item;
        std::istringstream ss(line);
        while (std::getline(ss, item, ',')) fields.push_back(item);
        if (!header_seen) {
            table.header = fields;
            header_seen = true;
        } else {
            table.rows.push_back(fields);
        }
    }
    return table;
}

inline std::string csv_text_from_table(const CsvTable& table) {
    std::string out;
    for (const std::string& c : table.comments) out += c + "\n";
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        if (i) out += ',';
        out += table.header[i];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            // numeric fields round-trip through parse/format; labels pass through
            double v = 0.0;
            const char* first = row[i].data();
            const char* last = row[i].data() + row[i].size();
            const auto res = std::from_chars(first, last, v);
            if (res.ec == std::errc{} && res.ptr == last)
                out += format_double(v);
            else
                out += row[i];
        }
        out += '\n';
    }
    return out;
}

} // namespace cogmap

#endif
