#pragma once
#include <string>
#include <utility>
#include <vector>

#include "gmacsec/closed_form.hpp"
#include "gmacsec/regions.hpp"
#include "gmacsec/sim.hpp"

namespace gmacsec {

enum class OutFormat { csv, doc };

// "csv" or "doc" (structured JSON document); anything else throws.
OutFormat parse_format(const std::string& s);

// 64-bit FNV-1a of the configuration line, as 16 lowercase hex digits.
std::string config_hash(const std::string& config_line);

// Everything that goes into the file footer (CSV) or the meta object (doc):
// the canonical reproduction line, hashed so outputs can be matched to the
// run that produced them, plus free-form key/value pairs such as grid
// resolutions. The tool version is always added.
struct ExportMeta {
    std::string config_line;
    std::vector<std::pair<std::string, std::string>> extra;
};

void write_trace(const std::string& path, OutFormat fmt, const RegionTrace& tr,
                 const ExportMeta& meta);

// One file holding several labeled traces (a column `label` in CSV, one
// array per label in the doc format).
void write_labeled_traces(
    const std::string& path, OutFormat fmt,
    const std::vector<std::pair<std::string, RegionTrace>>& traces,
    const ExportMeta& meta);

void write_figure(const std::string& path, OutFormat fmt,
                  const FigureTrace& fig, const ExportMeta& meta);

void write_sim_stats(const std::string& path, OutFormat fmt,
                     const SimStats& st, const ExportMeta& meta);

void write_verify_report(const std::string& path, OutFormat fmt,
                         const EquivFormsReport& rep, const ExportMeta& meta);

}
