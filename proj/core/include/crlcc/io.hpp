#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "crlcc/bits.hpp"
#include "crlcc/graph.hpp"
#include "crlcc/strong.hpp"
#include "crlcc/weak.hpp"

namespace crlcc {

// All formats are little-endian. Codeword bits are packed LSB-first within
// each byte; bit i (1-based) of the codeword is bit (i-1)%8 of byte (i-1)/8.
//
//   CDAG v1  "CDAG" u32 ver, u64 n, f64 delta, u32 degree, u64 seed,
//            u64 edge_count, then (u64 u, u64 v) per edge
//   CRW1 v1  "CRW1" u32 ver, u64 k, u32 ell, f64 delta, f64 alpha,
//            u64 graph_seed, 32-byte hash seed, codeword bytes
//   CRS1 v1  "CRS1" u32 ver, u64 k, u32 ell, u32 m, u64 t, f64 delta,
//            f64 alpha, f64 beta, f64 R, u32 kappa, u64 graph_seed,
//            32-byte hash seed, codeword bytes
//   mask     u64 count, then sorted u64 0-based bit positions
//
// The hash seed field holds lambda/8 seed bytes followed by zero padding;
// lambda is 128 when ell <= 128 and 256 otherwise.

inline constexpr std::uint32_t kFormatVersion = 1;

enum class FileKind { Dag, Weak, Strong, Unknown };

/// Reads the 4-byte magic and rewinds.
FileKind peek_kind(std::istream& in);

/// lambda implied by a label length.
unsigned lambda_for_ell(unsigned ell);

void write_dag(std::ostream& out, const LocalExpanderDag& g);
LocalExpanderDag read_dag(std::istream& in);

struct WeakFile {
  WeakCodeParams params;
  BitString word;
};
void write_weak(std::ostream& out, const WeakCodeParams& p, const BitString& word);
WeakFile read_weak(std::istream& in);

struct StrongFile {
  StrongCodeParams params;
  BitString word;
};
void write_strong(std::ostream& out, const StrongCodeParams& p, const BitString& word);
StrongFile read_strong(std::istream& in);

void write_mask(std::ostream& out, const std::vector<std::size_t>& mask);
std::vector<std::size_t> read_mask(std::istream& in);

}  // namespace crlcc
