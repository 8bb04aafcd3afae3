#pragma once

// Sweep checkpoint/result file: newline-delimited JSON. The first line is a
// header describing the sweep and its progress; each following line is one
// distinct value, in increasing numeric order:
//
//   {"kind":"gdet-sweep","format":1,"config_hash":"...","n":4,"alphabet":[...],
//    "chunk_size":...,"total_tuples":...,"total_chunks":...,
//    "chunks_completed":...,"total_enumerated":...}
//   {"value":"-3","count":12,"example_index":5,"example_tuple":[...],"class_tag":"..."}

#include "gdet/search.hpp"

#include <filesystem>
#include <map>
#include <string>

namespace gdet::search {

struct CheckpointHeader {
  std::string config_hash;
  int n = 0;
  std::vector<std::int64_t> alphabet;
  std::uint64_t chunk_size = 0;
  std::uint64_t total_tuples = 0;
  std::uint64_t total_chunks = 0;
  std::uint64_t chunks_completed = 0;
  std::uint64_t total_enumerated = 0;
};

/// FNV-1a over n, alphabet, chunk size and enabled checks. Worker count is
/// excluded: it does not affect the result.
std::string config_hash(const SweepConfig& config);

/// Writes to a sibling temporary file and renames it over path.
void write_checkpoint(const std::filesystem::path& path, const CheckpointHeader& header,
                      const std::map<BigInt, ValueEntry>& values);

struct LoadedCheckpoint {
  CheckpointHeader header;
  std::map<BigInt, ValueEntry> values;
};

/// Throws SweepError on unreadable or malformed files.
LoadedCheckpoint read_checkpoint(const std::filesystem::path& path);

}  // namespace gdet::search
