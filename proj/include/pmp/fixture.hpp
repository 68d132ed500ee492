// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "pmp/dasnet.hpp"
#include "pmp/grid.hpp"
#include "pmp/kzg.hpp"
#include "pmp/wire.hpp"

// Fixture container:
//
//   "PMPD" | version 0x01 | kind (u8) | u32le section_count
//   | section_count x (u32le length | payload)
//
// Kinds: 'S' SRS, 'G' grid, 'H' block header, 'M' MCell set. Integers inside
// payloads are little-endian like the rest of the wire format.
namespace pmp::fixture {

inline constexpr std::uint8_t kVersion = 0x01;

enum class Kind : std::uint8_t { Srs = 'S', Grid = 'G', Header = 'H', MCells = 'M' };

struct Container {
  Kind kind = Kind::Srs;
  std::vector<std::vector<std::uint8_t>> sections;
};

std::vector<std::uint8_t> encode_container(const Container& c);
/// Throws wire::DecodeError (BadMagic, Truncated, CountMismatch).
Container decode_container(std::span<const std::uint8_t> bytes, Kind expected);

std::vector<std::uint8_t> encode_srs(const SRS& srs);
SRS decode_srs(std::span<const std::uint8_t> bytes);

/// Stores the extended cells; decoding re-derives row polynomials and
/// commitments and rejects grids whose rows are not consistent codewords.
std::vector<std::uint8_t> encode_grid(const DataGrid& grid);
DataGrid decode_grid(std::span<const std::uint8_t> bytes, const SRS& srs);

std::vector<std::uint8_t> encode_header(const BlockHeader& h);
BlockHeader decode_header(std::span<const std::uint8_t> bytes);

struct MCellSet {
  Layout layout;
  /// Raw record bytes; decoded lazily so one bad record can be reported by index.
  std::vector<std::vector<std::uint8_t>> records;
};

std::vector<std::uint8_t> encode_mcells(const MCellSet& set);
MCellSet decode_mcells(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> read_file(const std::filesystem::path& p);
void write_file(const std::filesystem::path& p, std::span<const std::uint8_t> bytes);

}  // namespace pmp::fixture
