#include "gdet/checkpoint.hpp"

#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <sstream>

namespace gdet::search {

using ordered_json = nlohmann::ordered_json;

std::string config_hash(const SweepConfig& config) {
  std::string canonical = "n=" + std::to_string(config.n) + ";alphabet=";
  for (std::size_t i = 0; i < config.alphabet.size(); ++i) {
    canonical += (i ? "," : "") + std::to_string(config.alphabet[i]);
  }
  canonical += ";chunk=" + std::to_string(config.chunk_size) + ";checks=";
  for (const bool b : {config.checks.member_check, config.checks.odd_residue_check,
                       config.checks.valuation_gap_check, config.checks.v16_odd_part_check}) {
    canonical += b ? '1' : '0';
  }
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : canonical) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

void write_checkpoint(const std::filesystem::path& path, const CheckpointHeader& header,
                      const std::map<BigInt, ValueEntry>& values) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw SweepError("cannot write checkpoint " + tmp.string());
    ordered_json h;
    h["kind"] = "gdet-sweep";
    h["format"] = 1;
    h["config_hash"] = header.config_hash;
    h["n"] = header.n;
    h["alphabet"] = header.alphabet;
    h["chunk_size"] = header.chunk_size;
    h["total_tuples"] = header.total_tuples;
    h["total_chunks"] = header.total_chunks;
    h["chunks_completed"] = header.chunks_completed;
    h["total_enumerated"] = header.total_enumerated;
    out << h.dump() << '\n';
    for (const auto& [value, entry] : values) {
      ordered_json r;
      r["value"] = to_string(value);
      r["count"] = entry.count;
      r["example_index"] = entry.example_index;
      r["example_tuple"] = tuple_at(header.n, header.alphabet, entry.example_index);
      r["class_tag"] = entry.class_tag;
      out << r.dump() << '\n';
    }
    out.flush();
    if (!out) throw SweepError("write failed for checkpoint " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw SweepError("cannot replace " + path.string() + ": " + ec.message());
}

LoadedCheckpoint read_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SweepError("cannot read checkpoint " + path.string());
  LoadedCheckpoint out;
  std::string line;
  std::size_t line_no = 0;
  try {
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      const auto j = nlohmann::json::parse(line);
      if (line_no == 1) {
        if (j.at("kind") != "gdet-sweep" || j.at("format") != 1) throw SweepError("not a sweep checkpoint");
        CheckpointHeader& h = out.header;
        h.config_hash = j.at("config_hash").get<std::string>();
        h.n = j.at("n").get<int>();
        h.alphabet = j.at("alphabet").get<std::vector<std::int64_t>>();
        h.chunk_size = j.at("chunk_size").get<std::uint64_t>();
        h.total_tuples = j.at("total_tuples").get<std::uint64_t>();
        h.total_chunks = j.at("total_chunks").get<std::uint64_t>();
        h.chunks_completed = j.at("chunks_completed").get<std::uint64_t>();
        h.total_enumerated = j.at("total_enumerated").get<std::uint64_t>();
        continue;
      }
      ValueEntry e;
      e.count = j.at("count").get<std::uint64_t>();
      e.example_index = j.at("example_index").get<std::uint64_t>();
      e.class_tag = j.at("class_tag").get<std::string>();
      out.values.emplace(parse_integer(j.at("value").get<std::string>()), std::move(e));
    }
  } catch (const SweepError&) {
    throw;
  } catch (const std::exception& e) {
    throw SweepError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
  }
  if (line_no == 0) throw SweepError("empty checkpoint " + path.string());
  return out;
}

}  // namespace gdet::search
