#include "koopcore/io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "koopcore/errors.hpp"

namespace koop {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_text_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open for writing: " + tmp.string());
        out.write(content.data(), std::streamsize(content.size()));
        out.flush();
        if (!out) throw IoError("write failed: " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IoError("rename failed for " + path + ": " + ec.message());
    }
}

void write_snapshot_csv(const std::string& path, const SnapshotMatrix& snap,
                        bool header) {
    std::ostringstream out;
    if (header) {
        for (int j = 0; j < snap.state_dim(); ++j) {
            if (j) out << ',';
            out << 'x' << j;
        }
        out << '\n';
    }
    for (int i = 0; i < snap.count(); ++i) {
        for (int j = 0; j < snap.state_dim(); ++j) {
            if (j) out << ',';
            out << format_double(snap.states(i, j));
        }
        out << '\n';
    }
    write_text_atomic(path, out.str());

    nlohmann::json meta;
    meta["dt"] = snap.dt;
    meta["meta"] = snap.meta;
    write_text_atomic(path + ".meta.json", meta.dump(2) + "\n");
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    fields.push_back(cur);
    return fields;
}

bool parse_double(const std::string& s, double& out) {
    const char* begin = s.c_str();
    char* end = nullptr;
    errno = 0;
    out = std::strtod(begin, &end);
    while (end && *end == ' ') ++end;
    return end != begin && end && *end == '\0' && errno == 0;
}

std::vector<std::vector<double>> read_numeric_rows(const std::string& path,
                                                   std::vector<std::string>* header) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    bool first = true;
    std::size_t width = 0;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        std::vector<std::string> fields = split_csv_line(line);
        std::vector<double> vals(fields.size());
        bool numeric = true;
        for (std::size_t j = 0; j < fields.size(); ++j) {
            if (!parse_double(fields[j], vals[j])) {
                numeric = false;
                break;
            }
        }
        if (!numeric) {
            if (first && header) {
                *header = fields;
                first = false;
                continue;
            }
            throw IoError(path + ": non-numeric field on line " +
                          std::to_string(lineno));
        }
        first = false;
        if (width == 0) width = vals.size();
        if (vals.size() != width)
            throw IoError(path + ": inconsistent column count on line " +
                          std::to_string(lineno));
        rows.push_back(std::move(vals));
    }
    if (rows.empty()) throw IoError(path + ": no data rows");
    return rows;
}

}  // namespace

SnapshotMatrix read_snapshot_csv(const std::string& path, double dt_fallback) {
    std::vector<std::string> header;
    auto rows = read_numeric_rows(path, &header);
    SnapshotMatrix snap;
    snap.states.resize(Eigen::Index(rows.size()), Eigen::Index(rows[0].size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            snap.states(Eigen::Index(i), Eigen::Index(j)) = rows[i][j];
    snap.dt = dt_fallback;

    std::ifstream meta_in(path + ".meta.json");
    if (meta_in) {
        try {
            nlohmann::json meta = nlohmann::json::parse(meta_in);
            if (meta.contains("dt")) snap.dt = meta.at("dt").get<double>();
            if (meta.contains("meta")) snap.meta = meta.at("meta").get<std::string>();
        } catch (const nlohmann::json::exception& e) {
            throw IoError(path + ".meta.json: " + e.what());
        }
    }
    return snap;
}

void write_complex_csv(const std::string& path, const Matrix& m) {
    std::ostringstream out;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        if (j) out << ',';
        out << 'c' << j << "_re,c" << j << "_im";
    }
    out << '\n';
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) out << ',';
            out << format_double(m(i, j).real()) << ','
                << format_double(m(i, j).imag());
        }
        out << '\n';
    }
    write_text_atomic(path, out.str());
}

Matrix read_complex_csv(const std::string& path) {
    std::vector<std::string> header;
    auto rows = read_numeric_rows(path, &header);
    if (rows[0].size() % 2 != 0)
        throw IoError(path + ": odd column count; expected re/im pairs");
    Matrix m(Eigen::Index(rows.size()), Eigen::Index(rows[0].size() / 2));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            m(Eigen::Index(i), j) =
                Complex(rows[i][2 * j], rows[i][2 * j + 1]);
    return m;
}

}  // namespace koop
