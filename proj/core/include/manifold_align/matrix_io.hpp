#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "manifold_align/feature_matrix.hpp"

namespace manifold_align {

enum class MatrixFormat { Csv, Bin, Auto };

MatrixFormat parse_matrix_format(std::string_view name);

struct CsvOptions {
    bool skip_header = false;  // drop the first line before parsing
};

// Binary layout ("MKAF" container), all integers little-endian:
//   bytes 0..3   magic "MKAF"
//   bytes 4..5   u16 version = 1
//   bytes 6..13  u64 n_samples
//   bytes 14..21 u64 n_features
//   then n_samples * n_features IEEE-754 binary64 values, row-major.
inline constexpr char kBinMagic[4] = {'M', 'K', 'A', 'F'};
inline constexpr std::uint16_t kBinVersion = 1;

FeatureMatrix load_matrix(const std::filesystem::path& path, MatrixFormat format = MatrixFormat::Auto,
                          CsvOptions csv = {});
void save_matrix(const FeatureMatrix& m, const std::filesystem::path& path, MatrixFormat format);

FeatureMatrix parse_csv(std::string_view text, CsvOptions csv = {});
void write_csv(const FeatureMatrix& m, std::ostream& out);

FeatureMatrix parse_bin(std::string_view bytes);
void write_bin(const FeatureMatrix& m, std::ostream& out);

// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

}  // namespace manifold_align
