#include "gmacsec/export_fmt.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "gmacsec/version.hpp"

namespace gmacsec {

namespace {

using nlohmann::json;

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    return out;
}

// Footer block shared by every CSV table: fixed keys first, then the
// caller's extras, then the hash that ties the file to its command line.
void csv_footer(std::ofstream& out, const ExportMeta& meta,
                const std::vector<std::pair<std::string, std::string>>& pre) {
    out << "# version=" << GMACSEC_VERSION << "\n";
    for (auto& [k, v] : pre) out << "# " << k << "=" << v << "\n";
    for (auto& [k, v] : meta.extra) out << "# " << k << "=" << v << "\n";
    out << "# config_hash=" << config_hash(meta.config_line) << "\n";
}

json meta_object(const ExportMeta& meta,
                 const std::vector<std::pair<std::string, std::string>>& pre) {
    json m;
    m["version"] = GMACSEC_VERSION;
    for (auto& [k, v] : pre) m[k] = v;
    for (auto& [k, v] : meta.extra) m[k] = v;
    m["config_hash"] = config_hash(meta.config_line);
    m["config"] = meta.config_line;
    return m;
}

json rows_of(const RegionTrace& tr) {
    json rows = json::array();
    for (size_t i = 0; i < tr.points.size(); ++i) {
        const RatePoint& p = tr.points[i];
        rows.push_back({p.r0, p.r1, p.r2, p.r1e, p.r2e, tr.grid_ids[i]});
    }
    return rows;
}

void dump_doc(std::ofstream& out, const json& doc) { out << doc.dump(2) << "\n"; }

}  // namespace

OutFormat parse_format(const std::string& s) {
    if (s == "csv") return OutFormat::csv;
    if (s == "doc") return OutFormat::doc;
    throw std::invalid_argument("unknown format '" + s + "' (csv|doc)");
}

std::string config_hash(const std::string& config_line) {
    uint64_t h = 14695981039346656037ull;
    for (unsigned char c : config_line) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
    return buf;
}

void write_trace(const std::string& path, OutFormat fmt, const RegionTrace& tr,
                 const ExportMeta& meta) {
    std::vector<std::pair<std::string, std::string>> pre = {
        {"provenance", provenance_name(tr.provenance)},
        {"grid", tr.grid_desc}};
    std::ofstream out = open_out(path);
    if (fmt == OutFormat::csv) {
        out << "R0,R1,R2,R1e,R2e,grid_id\n";
        for (size_t i = 0; i < tr.points.size(); ++i) {
            const RatePoint& p = tr.points[i];
            out << fmt17(p.r0) << ',' << fmt17(p.r1) << ',' << fmt17(p.r2)
                << ',' << fmt17(p.r1e) << ',' << fmt17(p.r2e) << ','
                << tr.grid_ids[i] << "\n";
        }
        csv_footer(out, meta, pre);
    } else {
        json doc;
        doc["columns"] = {"R0", "R1", "R2", "R1e", "R2e", "grid_id"};
        doc["rows"] = rows_of(tr);
        doc["meta"] = meta_object(meta, pre);
        dump_doc(out, doc);
    }
}

void write_labeled_traces(
    const std::string& path, OutFormat fmt,
    const std::vector<std::pair<std::string, RegionTrace>>& traces,
    const ExportMeta& meta) {
    if (traces.empty())
        throw std::invalid_argument("write_labeled_traces: no traces");
    std::vector<std::pair<std::string, std::string>> pre = {
        {"grid", traces.front().second.grid_desc}};
    std::ofstream out = open_out(path);
    if (fmt == OutFormat::csv) {
        out << "label,R0,R1,R2,R1e,R2e,grid_id\n";
        for (auto& [label, tr] : traces)
            for (size_t i = 0; i < tr.points.size(); ++i) {
                const RatePoint& p = tr.points[i];
                out << label << ',' << fmt17(p.r0) << ',' << fmt17(p.r1)
                    << ',' << fmt17(p.r2) << ',' << fmt17(p.r1e) << ','
                    << fmt17(p.r2e) << ',' << tr.grid_ids[i] << "\n";
            }
        csv_footer(out, meta, pre);
    } else {
        json doc;
        doc["columns"] = {"R0", "R1", "R2", "R1e", "R2e", "grid_id"};
        json sets;
        for (auto& [label, tr] : traces) sets[label] = rows_of(tr);
        doc["datasets"] = sets;
        doc["meta"] = meta_object(meta, pre);
        dump_doc(out, doc);
    }
}

void write_figure(const std::string& path, OutFormat fmt,
                  const FigureTrace& fig, const ExportMeta& meta) {
    std::ofstream out = open_out(path);
    if (fmt == OutFormat::csv) {
        out << fig.r0_label;
        for (auto& s : fig.series) out << ',' << s;
        out << "\n";
        for (size_t r = 0; r < fig.r0.size(); ++r) {
            out << fmt17(fig.r0[r]);
            for (auto& col : fig.values) out << ',' << fmt17(col[r]);
            out << "\n";
        }
        csv_footer(out, meta, {});
    } else {
        json doc;
        doc["r0"] = fig.r0;
        json ser;
        for (size_t s = 0; s < fig.series.size(); ++s)
            ser[fig.series[s]] = fig.values[s];
        doc["series"] = ser;
        doc["meta"] = meta_object(meta, {});
        dump_doc(out, doc);
    }
}

void write_sim_stats(const std::string& path, OutFormat fmt,
                     const SimStats& st, const ExportMeta& meta) {
    std::vector<std::pair<std::string, std::string>> kv = {
        {"trials", std::to_string(st.trials)},
        {"seed", std::to_string(st.seed)},
        {"n", std::to_string(st.n)},
        {"r0", fmt17(st.r0)},
        {"rp1", fmt17(st.rp1)},
        {"rp2", fmt17(st.rp2)},
        {"r1", fmt17(st.r1)},
        {"r2", fmt17(st.r2)},
        {"no_secrecy1", st.no_secrecy1 ? "1" : "0"},
        {"no_secrecy2", st.no_secrecy2 ? "1" : "0"},
        {"bins1_collapsed", st.bins1_collapsed ? "1" : "0"},
        {"bins2_collapsed", st.bins2_collapsed ? "1" : "0"},
        {"lambda", fmt17(st.lambda)},
        {"lambda_hw", fmt17(st.lambda_hw)},
        {"lambda1", fmt17(st.lambda1)},
        {"lambda1_hw", fmt17(st.lambda1_hw)},
        {"lambda1_skipped", st.lambda1_skipped ? "1" : "0"},
        {"lambda2", fmt17(st.lambda2)},
        {"lambda2_hw", fmt17(st.lambda2_hw)},
        {"lambda2_skipped", st.lambda2_skipped ? "1" : "0"},
        {"eq1", fmt17(st.eq1)},
        {"eq1_hw", fmt17(st.eq1_hw)},
        {"eq2", fmt17(st.eq2)},
        {"eq2_hw", fmt17(st.eq2_hw)}};
    std::ofstream out = open_out(path);
    if (fmt == OutFormat::csv) {
        out << "key,value\n";
        for (auto& [k, v] : kv) out << k << ',' << v << "\n";
        csv_footer(out, meta, {});
    } else {
        json doc;
        doc["trials"] = st.trials;
        doc["seed"] = st.seed;
        doc["n"] = st.n;
        doc["r0"] = st.r0;
        doc["rp1"] = st.rp1;
        doc["rp2"] = st.rp2;
        doc["r1"] = st.r1;
        doc["r2"] = st.r2;
        doc["no_secrecy1"] = st.no_secrecy1;
        doc["no_secrecy2"] = st.no_secrecy2;
        doc["bins1_collapsed"] = st.bins1_collapsed;
        doc["bins2_collapsed"] = st.bins2_collapsed;
        doc["lambda"] = st.lambda;
        doc["lambda_hw"] = st.lambda_hw;
        doc["lambda1"] = st.lambda1;
        doc["lambda1_hw"] = st.lambda1_hw;
        doc["lambda1_skipped"] = st.lambda1_skipped;
        doc["lambda2"] = st.lambda2;
        doc["lambda2_hw"] = st.lambda2_hw;
        doc["lambda2_skipped"] = st.lambda2_skipped;
        doc["eq1"] = st.eq1;
        doc["eq1_hw"] = st.eq1_hw;
        doc["eq2"] = st.eq2;
        doc["eq2_hw"] = st.eq2_hw;
        doc["meta"] = meta_object(meta, {});
        dump_doc(out, doc);
    }
}

void write_verify_report(const std::string& path, OutFormat fmt,
                         const EquivFormsReport& rep, const ExportMeta& meta) {
    std::ofstream out = open_out(path);
    if (fmt == OutFormat::csv) {
        out << "key,value\n";
        out << "instances," << rep.instances << "\n";
        out << "cells," << rep.cells << "\n";
        out << "disagreements," << rep.disagreements << "\n";
        out << "first_counterexample," << rep.first_counterexample << "\n";
        csv_footer(out, meta, {});
    } else {
        json doc;
        doc["instances"] = rep.instances;
        doc["cells"] = rep.cells;
        doc["disagreements"] = rep.disagreements;
        doc["first_counterexample"] = rep.first_counterexample;
        doc["meta"] = meta_object(meta, {});
        dump_doc(out, doc);
    }
}

}
