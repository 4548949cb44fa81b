#pragma once

#include <array>
#include <cstddef>
#include <string_view>

// The ten-sample comparison table from the original study, column by
// column, exactly as printed. Ratios are in hundredths.
namespace biofact::testdata {

struct Table1Column {
  std::string_view source;  // "GPT" or "PubMed"
  int sample;               // 1..10
  std::size_t nodes, edges;
  int ratio_centi;
  std::size_t diseases, genes;
  std::size_t gg, dg, dd;
};

inline constexpr std::array<Table1Column, 20> kTable1 = {{
    {"GPT", 1, 70, 110, 64, 54, 16, 46, 54, 10},
    {"GPT", 2, 80, 138, 58, 64, 16, 67, 50, 19},
    {"GPT", 3, 80, 113, 71, 65, 15, 59, 45, 9},
    {"GPT", 4, 86, 141, 61, 67, 19, 64, 58, 19},
    {"GPT", 5, 80, 120, 67, 60, 20, 51, 50, 19},
    {"GPT", 6, 74, 116, 64, 57, 17, 48, 47, 20},
    {"GPT", 7, 66, 108, 61, 54, 12, 54, 47, 6},
    {"GPT", 8, 75, 116, 65, 60, 15, 56, 48, 11},
    {"GPT", 9, 75, 124, 60, 59, 16, 56, 49, 19},
    {"GPT", 10, 79, 139, 57, 61, 18, 62, 58, 19},
    {"PubMed", 1, 137, 297, 46, 117, 20, 229, 57, 11},
    {"PubMed", 2, 63, 124, 51, 54, 9, 86, 34, 4},
    {"PubMed", 3, 100, 165, 61, 87, 13, 120, 40, 5},
    {"PubMed", 4, 104, 214, 49, 88, 16, 151, 55, 5},
    {"PubMed", 5, 116, 251, 46, 97, 19, 196, 45, 10},
    {"PubMed", 6, 118, 240, 49, 101, 17, 192, 36, 10},
    {"PubMed", 7, 101, 207, 49, 79, 22, 148, 44, 14},
    {"PubMed", 8, 113, 366, 31, 97, 16, 311, 43, 10},
    {"PubMed", 9, 95, 147, 65, 75, 20, 94, 42, 11},
    {"PubMed", 10, 154, 393, 39, 131, 23, 316, 61, 16},
}};

}  // namespace biofact::testdata
