#include "manifold_align/matrix_io.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>

#include "manifold_align/error.hpp"

namespace manifold_align {

namespace {

constexpr std::size_t kBinHeaderBytes = 4 + 2 + 8 + 8;

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

double parse_token(std::string_view token, std::size_t line_no) {
    token = trim(token);
    // from_chars rejects a leading '+', which some writers emit.
    if (!token.empty() && token.front() == '+') token.remove_prefix(1);
    double value = 0.0;
    const auto* first = token.data();
    const auto* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (token.empty() || ec != std::errc{} || ptr != last) {
        fail(ErrorCode::MalformedRow,
             "line " + std::to_string(line_no) + ": cannot parse '" + std::string(token) + "' as a number");
    }
    if (!std::isfinite(value)) {
        fail(ErrorCode::NonFiniteValue,
             "line " + std::to_string(line_no) + ": non-finite value '" + std::string(token) + "'");
    }
    return value;
}

template <typename T>
void put_le(std::ostream& out, T value) {
    std::array<char, sizeof(T)> bytes{};
    for (std::size_t b = 0; b < sizeof(T); ++b) {
        bytes[b] = static_cast<char>((static_cast<std::uint64_t>(value) >> (8 * b)) & 0xffU);
    }
    out.write(bytes.data(), bytes.size());
}

template <typename T>
T get_le(std::string_view bytes, std::size_t offset) {
    std::uint64_t value = 0;
    for (std::size_t b = 0; b < sizeof(T); ++b) {
        value |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes[offset + b])) << (8 * b);
    }
    return static_cast<T>(value);
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::IoFailure, "cannot open '" + path.string() + "' for reading");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return std::move(buffer).str();
}

MatrixFormat sniff_format(const std::filesystem::path& path) {
    const auto ext = path.extension().string();
    if (ext == ".csv") return MatrixFormat::Csv;
    if (ext == ".mkaf") return MatrixFormat::Bin;
    fail(ErrorCode::BadFormat, "cannot infer matrix format from extension of '" + path.string() +
                                   "' (expected .csv or .mkaf)");
}

}  // namespace

MatrixFormat parse_matrix_format(std::string_view name) {
    if (name == "csv") return MatrixFormat::Csv;
    if (name == "bin") return MatrixFormat::Bin;
    if (name == "auto") return MatrixFormat::Auto;
    fail(ErrorCode::BadFormat, "unknown matrix format '" + std::string(name) + "'");
}

std::string format_double(double value) {
    std::array<char, 32> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), ptr);
}

FeatureMatrix parse_csv(std::string_view text, CsvOptions csv) {
    std::vector<double> data;
    std::size_t n_cols = 0;
    std::size_t n_rows = 0;
    std::size_t line_no = 0;
    bool header_pending = csv.skip_header;

    while (!text.empty()) {
        const auto eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        ++line_no;
        if (header_pending) {
            header_pending = false;
            continue;
        }
        line = trim(line);
        if (line.empty()) {
            // Blank lines are tolerated only as trailing padding.
            if (trim(text).find_first_not_of("\r\n") != std::string_view::npos) {
                fail(ErrorCode::MalformedRow, "line " + std::to_string(line_no) + ": empty row");
            }
            continue;
        }
        std::size_t cols = 0;
        std::size_t start = 0;
        while (true) {
            const auto comma = line.find(',', start);
            data.push_back(parse_token(line.substr(start, comma - start), line_no));
            ++cols;
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        if (n_rows == 0) {
            n_cols = cols;
        } else if (cols != n_cols) {
            fail(ErrorCode::MalformedRow, "line " + std::to_string(line_no) + ": expected " +
                                              std::to_string(n_cols) + " columns, found " +
                                              std::to_string(cols));
        }
        ++n_rows;
    }
    if (n_rows == 0) fail(ErrorCode::EmptyFile, "no data rows");
    return FeatureMatrix(n_rows, n_cols, std::move(data));
}

void write_csv(const FeatureMatrix& m, std::ostream& out) {
    std::string line;
    for (std::size_t i = 0; i < m.n_samples(); ++i) {
        line.clear();
        for (std::size_t f = 0; f < m.n_features(); ++f) {
            if (f > 0) line += ',';
            line += format_double(m(i, f));
        }
        line += '\n';
        out << line;
    }
}

FeatureMatrix parse_bin(std::string_view bytes) {
    if (bytes.empty()) fail(ErrorCode::EmptyFile, "empty binary matrix file");
    if (bytes.size() < kBinHeaderBytes || std::memcmp(bytes.data(), kBinMagic, 4) != 0) {
        fail(ErrorCode::BadFormat, "missing MKAF header");
    }
    const auto version = get_le<std::uint16_t>(bytes, 4);
    if (version != kBinVersion) {
        fail(ErrorCode::BadFormat, "unsupported MKAF version " + std::to_string(version));
    }
    const auto n = get_le<std::uint64_t>(bytes, 6);
    const auto d = get_le<std::uint64_t>(bytes, 14);
    if (n == 0 || d == 0) fail(ErrorCode::EmptyFile, "MKAF header declares an empty matrix");
    const auto payload = bytes.size() - kBinHeaderBytes;
    if (d > payload / 8 / n || payload != n * d * 8) {
        fail(ErrorCode::MalformedRow, "MKAF payload has " + std::to_string(payload) + " bytes, header declares " +
                                          std::to_string(n) + " x " + std::to_string(d) + " doubles");
    }
    std::vector<double> data(n * d);
    for (std::size_t idx = 0; idx < data.size(); ++idx) {
        data[idx] = std::bit_cast<double>(get_le<std::uint64_t>(bytes, kBinHeaderBytes + 8 * idx));
    }
    return FeatureMatrix(n, d, std::move(data));
}

void write_bin(const FeatureMatrix& m, std::ostream& out) {
    out.write(kBinMagic, 4);
    put_le<std::uint16_t>(out, kBinVersion);
    put_le<std::uint64_t>(out, m.n_samples());
    put_le<std::uint64_t>(out, m.n_features());
    for (double v : m.data()) put_le<std::uint64_t>(out, std::bit_cast<std::uint64_t>(v));
}

FeatureMatrix load_matrix(const std::filesystem::path& path, MatrixFormat format, CsvOptions csv) {
    if (format == MatrixFormat::Auto) format = sniff_format(path);
    const auto contents = read_file(path);
    try {
        return format == MatrixFormat::Csv ? parse_csv(contents, csv) : parse_bin(contents);
    } catch (const Error& e) {
        throw Error(e.code(), path.string() + ": " + e.what());
    }
}

void save_matrix(const FeatureMatrix& m, const std::filesystem::path& path, MatrixFormat format) {
    if (format == MatrixFormat::Auto) format = sniff_format(path);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::IoFailure, "cannot open '" + path.string() + "' for writing");
    if (format == MatrixFormat::Csv) {
        write_csv(m, out);
    } else {
        write_bin(m, out);
    }
    out.flush();
    if (!out) fail(ErrorCode::IoFailure, "write to '" + path.string() + "' failed");
}

}  // namespace manifold_align
