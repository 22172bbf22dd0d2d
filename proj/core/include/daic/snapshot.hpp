#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "daic/errors.hpp"
#include "daic/transport.hpp"
#include "daic/value.hpp"

namespace daic {

// Snapshot directory layout:
//   meta.txt          `key value` lines; `complete 1` is always the last line
//   worker_<i>.state  `vid<TAB>v<TAB>dv` per entry
//   worker_<i>.pending `dest<TAB>value` per buffered, not yet delivered message
// A snapshot is written as snapshot_<seq>.partial and renamed into place
// only after every file has been flushed.
struct SnapshotMeta {
  std::uint64_t sequence = 0;
  std::string kernel;
  std::string value_kind;
  std::size_t workers = 0;
  std::size_t vertices = 0;
  std::string mode;
  double elapsed_ms = 0.0;
  std::uint64_t updates = 0;
  std::uint64_t messages = 0;
  std::map<std::string, std::string> extra;
};

template <class V>
struct WorkerDump {
  struct Row {
    VertexId vid;
    V v;
    V dv;
  };
  std::vector<Row> state;
  std::vector<DeltaMessage<V>> pending;
};

template <class V>
struct Snapshot {
  std::filesystem::path path;
  SnapshotMeta meta;
  std::vector<WorkerDump<V>> workers;
};

std::filesystem::path snapshot_path(const std::filesystem::path& root, std::uint64_t sequence);
// One past the highest sequence number present under root (partial or not).
std::uint64_t next_sequence(const std::filesystem::path& root);

void write_meta(const std::filesystem::path& dir, const SnapshotMeta& meta);
// Throws SnapshotError when meta.txt is missing, unreadable, or not complete.
SnapshotMeta read_meta(const std::filesystem::path& dir);

// `path` may be a snapshot directory or a directory holding snapshot_*
// directories, in which case the highest complete one is chosen.
std::filesystem::path resolve_snapshot(const std::filesystem::path& path);

namespace detail {

void commit_snapshot(const std::filesystem::path& partial, const std::filesystem::path& final_path);
std::string worker_file(std::size_t worker, const char* suffix);
std::vector<std::string> split_tabs(const std::string& line);

}  // namespace detail

// Writes a complete snapshot under root and returns its directory. Throws
// SnapshotError on any IO failure; nothing is left that resolve_snapshot
// would accept.
template <class V>
std::filesystem::path write_snapshot(const std::filesystem::path& root, SnapshotMeta meta,
                                     const std::vector<WorkerDump<V>>& workers) {
  namespace fs = std::filesystem;
  using T = ValueTraits<V>;
  std::error_code ec;
  fs::create_directories(root, ec);
  if (ec) throw SnapshotError("cannot create " + root.string() + ": " + ec.message());
  meta.sequence = next_sequence(root);
  meta.value_kind = std::string(T::kind);
  meta.workers = workers.size();
  const fs::path final_path = snapshot_path(root, meta.sequence);
  fs::path partial = final_path;
  partial += ".partial";
  fs::remove_all(partial, ec);
  if (!fs::create_directory(partial, ec) || ec) {
    throw SnapshotError("cannot create " + partial.string());
  }

  std::size_t vertices = 0;
  for (std::size_t w = 0; w < workers.size(); ++w) {
    std::ofstream state(partial / detail::worker_file(w, ".state"));
    for (const auto& row : workers[w].state) {
      state << row.vid << '\t' << T::format(row.v) << '\t' << T::format(row.dv) << '\n';
    }
    vertices += workers[w].state.size();
    std::ofstream pending(partial / detail::worker_file(w, ".pending"));
    for (const auto& m : workers[w].pending) pending << m.dest << '\t' << T::format(m.value) << '\n';
    state.flush();
    pending.flush();
    if (!state || !pending) throw SnapshotError("write failed in " + partial.string());
  }
  meta.vertices = vertices;
  write_meta(partial, meta);
  detail::commit_snapshot(partial, final_path);
  return final_path;
}

template <class V>
Snapshot<V> read_snapshot(const std::filesystem::path& path) {
  using T = ValueTraits<V>;
  Snapshot<V> snap;
  snap.path = resolve_snapshot(path);
  snap.meta = read_meta(snap.path);
  if (snap.meta.value_kind != T::kind) {
    throw SnapshotError("snapshot holds " + snap.meta.value_kind + " values, expected " +
                        std::string(T::kind));
  }
  std::size_t vertices = 0;
  for (std::size_t w = 0; w < snap.meta.workers; ++w) {
    WorkerDump<V> dump;
    auto read_lines = [&](const char* suffix, std::size_t fields, auto&& on_row) {
      const auto file = snap.path / detail::worker_file(w, suffix);
      std::ifstream in(file);
      if (!in) throw SnapshotError("missing " + file.string());
      std::string line;
      std::size_t line_number = 0;
      while (std::getline(in, line)) {
        ++line_number;
        if (line.empty()) continue;
        auto parts = detail::split_tabs(line);
        if (parts.size() != fields) {
          throw SnapshotError(file.string() + ":" + std::to_string(line_number) + ": expected " +
                              std::to_string(fields) + " fields");
        }
        try {
          on_row(parts);
        } catch (const Error& e) {
          throw SnapshotError(file.string() + ":" + std::to_string(line_number) + ": " + e.what());
        } catch (const std::exception& e) {
          throw SnapshotError(file.string() + ":" + std::to_string(line_number) + ": " + e.what());
        }
      }
    };
    read_lines(".state", 3, [&](const std::vector<std::string>& p) {
      dump.state.push_back({std::stoull(p[0]), T::parse(p[1]), T::parse(p[2])});
    });
    read_lines(".pending", 2, [&](const std::vector<std::string>& p) {
      dump.pending.push_back({std::stoull(p[0]), T::parse(p[1])});
    });
    vertices += dump.state.size();
    snap.workers.push_back(std::move(dump));
  }
  if (vertices != snap.meta.vertices) {
    throw SnapshotError("snapshot lists " + std::to_string(snap.meta.vertices) + " vertices but holds " +
                        std::to_string(vertices));
  }
  return snap;
}

}  // namespace daic
