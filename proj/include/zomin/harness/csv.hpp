#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "zomin/problems/datasets.hpp"
#include "zomin/solvers.hpp"

namespace zomin {

/// Shortest-faithful rendering: 17 significant digits round-trip any double
/// bit-exactly through text.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline constexpr const char* kTraceHeader = "iter,f,best_f,step,fevals,elapsed_ms";

/// Trace serialization. Wall time is only written when include_time is set;
/// otherwise the column holds zeros so identical configs produce identical
/// bytes.
inline void write_trace_csv(std::ostream& out, const Trace& trace, bool include_time = false) {
    out << kTraceHeader << '\n';
    for (const TraceRecord& r : trace.records) {
        out << r.iter << ',' << format_double(r.f) << ',' << format_double(r.best_f) << ','
            << format_double(r.step) << ',' << r.fevals << ','
            << format_double(include_time ? r.elapsed_ms : 0.0) << '\n';
    }
    if (trace.failed) out << "# evaluation failure: " << trace.error << '\n';
}

inline void write_trace_csv(const std::filesystem::path& path, const Trace& trace,
                            bool include_time = false) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write trace file: " + path.string());
    write_trace_csv(out, trace, include_time);
}

/// Dataset file schema selector: the diagnostic format (id, M/B token, 30
/// features) or a generic numeric CSV with a designated label column.
struct CsvSchema {
    enum class Kind { Wdbc, Generic };

    Kind kind = Kind::Wdbc;
    int label_column = 0;          // generic only
    std::string positive_token;    // generic only; empty = labels are numeric

    static CsvSchema wdbc() { return {}; }
    static CsvSchema generic(int label_column, std::string positive_token = "") {
        return {Kind::Generic, label_column, std::move(positive_token)};
    }
};

namespace detail {

inline std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(field);
    return fields;
}

inline double parse_field(const std::string& raw, const std::string& path, long row) {
    try {
        std::size_t used = 0;
        const double v = std::stod(raw, &used);
        if (used != raw.size()) throw std::invalid_argument(raw);
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error(path + ": row " + std::to_string(row) +
                                 ": unparseable real '" + raw + "'");
    }
}

}  // namespace detail

/// Writes a labelled dataset in the selected schema; the wdbc layout gets
/// sequential ids and M/B diagnosis tokens.
inline void write_labeled_csv(const std::filesystem::path& path, const LabeledDataset& data,
                              const CsvSchema& schema) {
    data.validate();
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write dataset file: " + path.string());
    for (std::size_t i = 0; i < data.size(); ++i) {
        const Vector& x = data.features[i];
        if (schema.kind == CsvSchema::Kind::Wdbc) {
            if (x.size() != 30) throw std::invalid_argument("write_labeled_csv: wdbc rows need 30 features");
            out << (i + 1) << ',' << (data.labels[i] > 0 ? 'M' : 'B');
            for (Eigen::Index j = 0; j < x.size(); ++j) out << ',' << format_double(x[j]);
        } else {
            Eigen::Index fi = 0;
            for (int col = 0; col < static_cast<int>(x.size()) + 1; ++col) {
                if (col > 0) out << ',';
                if (col == schema.label_column) {
                    if (schema.positive_token.empty()) {
                        out << format_double(data.labels[i]);
                    } else {
                        out << (data.labels[i] > 0 ? schema.positive_token : "neg");
                    }
                } else {
                    out << format_double(x[fi++]);
                }
            }
        }
        out << '\n';
    }
}

/// Loads a labelled dataset. The wdbc schema expects 32 comma-separated
/// fields per row: an ignored id, a diagnosis token (M -> +1, B -> -1) and
/// 30 real features. Errors name the offending row.
inline LabeledDataset load_labeled_csv(const std::string& path, const CsvSchema& schema) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open dataset file: " + path);

    LabeledDataset data;
    std::string line;
    long row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty() || line == "\r") continue;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto fields = detail::split_row(line);

        if (schema.kind == CsvSchema::Kind::Wdbc) {
            if (fields.size() != 32) {
                throw std::runtime_error(path + ": row " + std::to_string(row) + ": expected 32 fields, got " +
                                         std::to_string(fields.size()));
            }
            double label = 0.0;
            if (fields[1] == "M") {
                label = 1.0;
            } else if (fields[1] == "B") {
                label = -1.0;
            } else {
                throw std::runtime_error(path + ": row " + std::to_string(row) +
                                         ": unknown diagnosis token '" + fields[1] + "'");
            }
            Vector features(30);
            for (int j = 0; j < 30; ++j) {
                features[j] = detail::parse_field(fields[static_cast<std::size_t>(j + 2)], path, row);
            }
            data.features.push_back(std::move(features));
            data.labels.push_back(label);
        } else {
            if (schema.label_column < 0 || static_cast<std::size_t>(schema.label_column) >= fields.size()) {
                throw std::runtime_error(path + ": row " + std::to_string(row) + ": label column out of range");
            }
            Vector features(static_cast<Eigen::Index>(fields.size()) - 1);
            Eigen::Index fi = 0;
            double label = 0.0;
            for (std::size_t j = 0; j < fields.size(); ++j) {
                if (static_cast<int>(j) == schema.label_column) {
                    label = schema.positive_token.empty()
                                ? detail::parse_field(fields[j], path, row)
                                : (fields[j] == schema.positive_token ? 1.0 : -1.0);
                } else {
                    features[fi++] = detail::parse_field(fields[j], path, row);
                }
            }
            data.features.push_back(std::move(features));
            data.labels.push_back(label);
        }
    }
    data.validate();
    return data;
}

}  // namespace zomin
