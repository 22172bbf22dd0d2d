#include "daic/snapshot.hpp"

#include <charconv>
#include <fstream>
#include <string_view>

#include "daic/graph.hpp"

namespace daic {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kPrefix = "snapshot_";
constexpr std::string_view kFormat = "daic-snapshot-1";

// Sequence number of a snapshot_<seq> or snapshot_<seq>.partial entry.
std::optional<std::uint64_t> sequence_of(const fs::path& p, bool* partial) {
  std::string name = p.filename().string();
  if (name.rfind(kPrefix, 0) != 0) return std::nullopt;
  std::string_view digits(name);
  digits.remove_prefix(kPrefix.size());
  *partial = false;
  if (digits.size() > 8 && digits.substr(digits.size() - 8) == ".partial") {
    digits.remove_suffix(8);
    *partial = true;
  }
  std::uint64_t seq = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), seq);
  if (ec != std::errc() || ptr != digits.data() + digits.size()) return std::nullopt;
  return seq;
}

}  // namespace

namespace detail {

void commit_snapshot(const fs::path& partial, const fs::path& final_path) {
  std::error_code ec;
  fs::rename(partial, final_path, ec);
  if (ec) throw SnapshotError("cannot finalize " + final_path.string() + ": " + ec.message());
}

std::string worker_file(std::size_t worker, const char* suffix) {
  return "worker_" + std::to_string(worker) + suffix;
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  std::string_view view(line);
  if (!view.empty() && view.back() == '\r') view.remove_suffix(1);
  while (true) {
    const auto tab = view.find('\t', start);
    out.emplace_back(view.substr(start, tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return out;
}

}  // namespace detail

fs::path snapshot_path(const fs::path& root, std::uint64_t sequence) {
  std::string digits = std::to_string(sequence);
  if (digits.size() < 6) digits.insert(0, 6 - digits.size(), '0');
  return root / (std::string(kPrefix) + digits);
}

std::uint64_t next_sequence(const fs::path& root) {
  std::uint64_t highest = 0;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(root, ec)) {
    bool partial = false;
    if (auto seq = sequence_of(entry.path(), &partial)) highest = std::max(highest, *seq);
  }
  return highest + 1;
}

void write_meta(const fs::path& dir, const SnapshotMeta& meta) {
  std::ofstream out(dir / "meta.txt");
  out << "format " << kFormat << '\n'
      << "sequence " << meta.sequence << '\n'
      << "kernel " << meta.kernel << '\n'
      << "value_kind " << meta.value_kind << '\n'
      << "workers " << meta.workers << '\n'
      << "vertices " << meta.vertices << '\n'
      << "mode " << meta.mode << '\n'
      << "elapsed_ms " << format_real(meta.elapsed_ms) << '\n'
      << "updates " << meta.updates << '\n'
      << "messages " << meta.messages << '\n';
  for (const auto& [key, value] : meta.extra) out << "x." << key << ' ' << value << '\n';
  out << "complete 1\n";
  out.flush();
  if (!out) throw SnapshotError("cannot write " + (dir / "meta.txt").string());
}

SnapshotMeta read_meta(const fs::path& dir) {
  std::ifstream in(dir / "meta.txt");
  if (!in) throw SnapshotError("no meta.txt in " + dir.string());
  std::map<std::string, std::string> fields;
  std::string line;
  std::string last_key;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto space = line.find(' ');
    std::string key = line.substr(0, space);
    std::string value = space == std::string::npos ? std::string() : line.substr(space + 1);
    last_key = key;
    fields[key] = value;
  }
  if (last_key != "complete" || fields["complete"] != "1") {
    throw SnapshotError("snapshot " + dir.string() + " is incomplete");
  }
  if (fields["format"] != kFormat) throw SnapshotError("unknown snapshot format in " + dir.string());
  SnapshotMeta meta;
  try {
    meta.sequence = std::stoull(fields.at("sequence"));
    meta.kernel = fields.at("kernel");
    meta.value_kind = fields.at("value_kind");
    meta.workers = std::stoull(fields.at("workers"));
    meta.vertices = std::stoull(fields.at("vertices"));
    meta.mode = fields.at("mode");
    meta.elapsed_ms = std::stod(fields.at("elapsed_ms"));
    meta.updates = std::stoull(fields.at("updates"));
    meta.messages = std::stoull(fields.at("messages"));
  } catch (const std::exception&) {
    throw SnapshotError("corrupt meta.txt in " + dir.string());
  }
  for (const auto& [key, value] : fields) {
    if (key.rfind("x.", 0) == 0) meta.extra[key.substr(2)] = value;
  }
  return meta;
}

fs::path resolve_snapshot(const fs::path& path) {
  std::error_code ec;
  if (!fs::is_directory(path, ec)) throw SnapshotError("no snapshot at " + path.string());
  if (fs::exists(path / "meta.txt", ec)) {
    read_meta(path);
    return path;
  }
  std::optional<std::uint64_t> best;
  for (const auto& entry : fs::directory_iterator(path, ec)) {
    bool partial = false;
    auto seq = sequence_of(entry.path(), &partial);
    if (!seq || partial || (best && *seq <= *best)) continue;
    try {
      read_meta(entry.path());
      best = seq;
    } catch (const SnapshotError&) {
    }
  }
  if (!best) throw SnapshotError("no complete snapshot under " + path.string());
  return snapshot_path(path, *best);
}

}  // namespace daic
