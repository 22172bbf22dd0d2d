#pragma once

#include <algorithm>
#include <atomic>
#include <barrier>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "daic/errors.hpp"
#include "daic/graph.hpp"
#include "daic/kernel.hpp"
#include "daic/rng.hpp"
#include "daic/scheduler.hpp"
#include "daic/snapshot.hpp"
#include "daic/stats.hpp"
#include "daic/termination.hpp"
#include "daic/transport.hpp"

namespace daic {

enum class Mode { sync, async_rr, async_pri };

std::string_view to_string(Mode mode);
// "sync", "async_rr" / "rr", "async_pri" / "pri". Throws ConfigError.
Mode parse_mode(std::string_view name);

using namespace std::chrono_literals;

struct EngineConfig {
  Mode mode = Mode::async_pri;
  std::size_t workers = 1;
  double queue_fraction = 0.01;
  Clock::duration flush_timeout = 5ms;
  // Async only; sync mode checks after every superstep.
  Clock::duration term_check_interval = 100ms;

  // 0 means stop only at quiescence (no pending delta anywhere). Otherwise
  // stop when the updates since the previous check moved progress by less
  // than this in total (Σ |per-update change|), or, with reference_progress
  // set, when it is that close to the reference value.
  double term_threshold = 0.0;
  std::optional<double> reference_progress;
  // Async: a progress-delta check is only taken after at least this many
  // updates since the previous one, so the delta measures roughly one sweep
  // rather than however much work fit into one check interval. 0 means |V|.
  std::uint64_t min_updates_per_check = 0;
  // Async with reference_progress: update threads also test the criterion
  // after each batch instead of waiting for the next periodic check.
  bool inline_check = true;

  std::optional<Clock::duration> checkpoint_interval;
  std::filesystem::path checkpoint_dir;
  // Stop abruptly, without draining, right after this many checkpoints.
  std::optional<std::uint64_t> halt_after_checkpoints;

  // Default max(10^7, 10^4 · |V|).
  std::optional<std::uint64_t> max_updates;
  std::size_t flush_cap = kDefaultFlushCap;
  std::size_t channel_capacity = std::size_t{1} << 20;
  std::uint64_t seed = 1;
  // Free-form identity written into snapshot metadata.
  std::string description;
};

void validate(const EngineConfig& config);

// Vertex state indexed by graph position, used to resume a run.
template <class V>
struct StartState {
  std::vector<V> v;
  std::vector<V> dv;
};

template <class V>
struct RunResult {
  std::vector<VertexId> vids;
  std::vector<V> v;
  std::vector<V> dv;
  RunStats stats;
  std::optional<std::filesystem::path> last_snapshot;

  const std::vector<V>& values() const { return v; }

  std::vector<V> merged(const Kernel<V>& kernel) const {
    std::vector<V> out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(kernel.accumulate(v[i], dv[i]));
    return out;
  }
};

template <class V>
double total_progress(const std::vector<V>& values, const Kernel<V>& kernel) {
  double sum = 0.0;
  for (const V& x : values) sum += kernel.progress_of(x);
  return sum;
}

namespace detail {

class SpinLock {
 public:
  void lock() noexcept {
    int spins = 0;
    while (flag_.test_and_set(std::memory_order_acquire)) {
      if (++spins > 8) std::this_thread::yield();
    }
  }
  void unlock() noexcept { flag_.clear(std::memory_order_release); }

 private:
  std::atomic_flag flag_ = ATOMIC_FLAG_INIT;
};

inline double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

template <class V>
class Runtime {
 public:
  Runtime(const Graph& graph, const Kernel<V>& kernel, const EngineConfig& config,
          const StartState<V>* start)
      : graph_(graph), kernel_(kernel), config_(config), shards_(config.workers) {
    validate(config);
    const std::size_t n = graph.vertex_count();
    min_updates_per_check_ = config.min_updates_per_check ? config.min_updates_per_check : std::max<std::uint64_t>(1, n);
    max_updates_ = config.max_updates.value_or(std::max<std::uint64_t>(10000000, 10000 * static_cast<std::uint64_t>(n)));

    owner_.resize(n);
    local_.resize(n);
    for (std::size_t w = 0; w < shards_; ++w) workers_.push_back(std::make_unique<Worker>(kernel, config, w));
    for (std::size_t i = 0; i < n; ++i) {
      const auto w = route(graph.vid_at(i), shards_);
      owner_[i] = static_cast<std::uint32_t>(w);
      local_[i] = workers_[w]->gidx.size();
      workers_[w]->gidx.push_back(i);
    }
    edge_offset_.resize(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) edge_offset_[i + 1] = edge_offset_[i] + graph.out_degree_at(i);
    edge_target_.reserve(graph.edge_count());
    for (std::size_t i = 0; i < n; ++i) {
      for (const Edge& e : graph.out_edges_at(i)) edge_target_.push_back(graph.index_of(e.target));
    }

    std::int64_t initially_active = 0;
    for (auto& wp : workers_) {
      Worker& w = *wp;
      const std::size_t m = w.gidx.size();
      w.v.reserve(m);
      w.dv.reserve(m);
      w.vids.reserve(m);
      for (std::size_t l = 0; l < m; ++l) {
        const std::size_t i = w.gidx[l];
        w.vids.push_back(graph.vid_at(i));
        if (start) {
          w.v.push_back(start->v[i]);
          w.dv.push_back(start->dv[i]);
        } else {
          auto init = kernel.init(VertexRef{graph.vid_at(i), i});
          w.v.push_back(std::move(init.v0));
          w.dv.push_back(std::move(init.dv1));
        }
      }
      w.locks = std::make_unique<SpinLock[]>(m);
      w.prio = std::make_unique<std::atomic<double>[]>(m);
      w.active = std::make_unique<std::atomic<std::uint8_t>[]>(m);
      double progress = 0.0;
      std::int64_t active = 0;
      for (std::size_t l = 0; l < m; ++l) {
        const bool a = !kernel.is_zero(w.dv[l]);
        w.active[l].store(a, std::memory_order_relaxed);
        w.prio[l].store(a ? clean(priority(w.v[l], w.dv[l], kernel)) : 0.0, std::memory_order_relaxed);
        active += a;
        progress += kernel.progress_of(w.v[l]);
      }
      w.active_entries.store(active);
      w.progress.store(progress);
      initially_active += active;
    }
    outstanding_.store(initially_active);
  }

  RunResult<V> run() {
    start_time_ = Clock::now();
    last_checkpoint_ = start_time_;
    if (config_.mode == Mode::sync) {
      run_sync();
    } else {
      run_async();
    }
    return collect();
  }

 private:
  struct Worker {
    Worker(const Kernel<V>& kernel, const EngineConfig& config, std::size_t id)
        : id(id), inbox(config.mode == Mode::sync ? 0 : config.channel_capacity), rng(config.seed + 7919 * id) {
      out.reserve(config.workers);
      for (std::size_t w = 0; w < config.workers; ++w) out.emplace_back(kernel, config.flush_cap);
    }

    std::size_t id;
    std::vector<std::size_t> gidx;
    std::vector<VertexId> vids;
    std::vector<V> v;
    std::vector<V> dv;
    std::vector<V> next;  // sync mode: deltas for the next superstep
    std::unique_ptr<SpinLock[]> locks;
    std::unique_ptr<std::atomic<double>[]> prio;
    std::unique_ptr<std::atomic<std::uint8_t>[]> active;
    std::atomic<std::int64_t> active_entries{0};

    std::vector<MsgTable<V>> out;
    Channel<V> inbox;
    Rng rng;

    std::atomic<double> progress{0.0};
    // Σ |progress change| over this worker's updates. Equals the net change
    // for monotone kernels; for signed ones it cannot cancel out.
    std::atomic<double> movement{0.0};
    std::atomic<std::uint64_t> flush_ack{0};
    std::atomic<std::uint64_t> updates{0};
    std::atomic<std::uint64_t> messages{0};
    std::atomic<std::uint64_t> remote{0};
    std::atomic<std::uint64_t> routing_errors{0};
    std::uint64_t step_updates = 0;  // sync mode

    std::mutex wake_mutex;
    std::condition_variable wake;
    std::thread update_thread;
    std::thread receive_thread;
  };

  static double clean(double p) { return std::isnan(p) ? HUGE_VAL : p; }

  // ---- shared by both modes --------------------------------------------

  void on_quiescent_change(std::int64_t before, std::int64_t delta) {
    if (before + delta == 0) {
      std::lock_guard lock(coord_mutex_);
      coord_cv_.notify_all();
    }
  }

  void add_outstanding(std::int64_t delta) {
    if (delta == 0) return;
    const auto before = outstanding_.fetch_add(delta, std::memory_order_acq_rel);
    on_quiescent_change(before, delta);
  }

  // dv ⊕= m on a local entry of worker w, under the entry lock. Keeps the
  // mirrors and the outstanding-work counter in step.
  void apply(Worker& w, std::size_t l, const V& m) {
    w.locks[l].lock();
    const bool was = w.active[l].load(std::memory_order_relaxed);
    w.dv[l] = kernel_.accumulate(w.dv[l], m);
    const bool now = !kernel_.is_zero(w.dv[l]);
    w.prio[l].store(now ? clean(priority(w.v[l], w.dv[l], kernel_)) : 0.0, std::memory_order_relaxed);
    w.active[l].store(now, std::memory_order_relaxed);
    w.locks[l].unlock();
    if (was == now) return;
    w.active_entries.fetch_add(now ? 1 : -1, std::memory_order_relaxed);
    add_outstanding(now ? 1 : -1);
    if (now) w.wake.notify_one();
  }

  EdgeRef edge_ref(std::size_t i, std::size_t slot) const {
    const Edge& e = graph_.out_edges_at(i)[slot];
    return EdgeRef{graph_.vid_at(i), e.target, i, edge_target_[edge_offset_[i] + slot], e.weight,
                   graph_.out_degree_at(i)};
  }

  void flush_table(Worker& w, std::size_t dest, bool force) {
    MsgTable<V>& table = w.out[dest];
    if (table.empty()) return;
    const auto now = Clock::now();
    if (!force && !table.due(now, config_.flush_timeout)) return;
    const std::size_t before = table.size();
    auto batch = table.take_all(now);
    const std::size_t dropped = before - batch.size();
    w.remote.fetch_add(batch.size(), std::memory_order_relaxed);
    workers_[dest]->inbox.push(std::move(batch));
    add_outstanding(-static_cast<std::int64_t>(dropped));
  }

  void flush_all(Worker& w, bool force) {
    for (std::size_t d = 0; d < shards_; ++d) {
      if (d != w.id) flush_table(w, d, force);
    }
  }

  double global_movement() const {
    double sum = 0.0;
    for (const auto& w : workers_) sum += w->movement.load(std::memory_order_relaxed);
    return sum;
  }

  double global_progress() const {
    double sum = 0.0;
    for (const auto& w : workers_) sum += w->progress.load(std::memory_order_relaxed);
    return sum;
  }

  std::uint64_t total_updates() const {
    std::uint64_t sum = 0;
    for (const auto& w : workers_) sum += w->updates.load(std::memory_order_relaxed);
    return sum;
  }

  std::uint64_t total_messages() const {
    std::uint64_t sum = 0;
    for (const auto& w : workers_) sum += w->messages.load(std::memory_order_relaxed);
    return sum;
  }

  void record_sample(double progress) {
    stats_.samples.push_back(ProgressSample{elapsed_ms(start_time_), total_updates(), total_messages(), progress});
  }

  bool checkpoint_due() const {
    return config_.checkpoint_interval && Clock::now() - last_checkpoint_ >= *config_.checkpoint_interval;
  }

  // Tables must be quiet (no concurrent writers) when this runs.
  void write_checkpoint() {
    std::vector<WorkerDump<V>> dumps(shards_);
    for (std::size_t w = 0; w < shards_; ++w) {
      Worker& worker = *workers_[w];
      for (std::size_t l = 0; l < worker.v.size(); ++l) {
        dumps[w].state.push_back({worker.vids[l], worker.v[l], worker.dv[l]});
      }
      for (std::size_t d = 0; d < shards_; ++d) {
        if (d == w) continue;
        // Pending messages are recorded with the worker that will receive them.
        for (auto& m : worker.out[d].peek()) dumps[d].pending.push_back(std::move(m));
      }
    }
    SnapshotMeta meta;
    meta.kernel = kernel_.name;
    meta.mode = std::string(to_string(config_.mode));
    meta.elapsed_ms = elapsed_ms(start_time_);
    meta.updates = total_updates();
    meta.messages = total_messages();
    if (!config_.description.empty()) meta.extra["description"] = config_.description;
    try {
      last_snapshot_ = write_snapshot(config_.checkpoint_dir, meta, dumps);
      ++stats_.checkpoints_written;
    } catch (const std::exception&) {
      ++stats_.checkpoint_failures;
    }
    last_checkpoint_ = Clock::now();
  }

  bool halt_now() const {
    return config_.halt_after_checkpoints && stats_.checkpoints_written >= *config_.halt_after_checkpoints;
  }

  // ---- sync ---------------------------------------------------------------

  void run_sync() {
    for (auto& w : workers_) w->next.assign(w->v.size(), kernel_.zero);
    record_sample(global_progress());
    bool stop = false;
    // The barrier completes twice per superstep; only the second (after the
    // receive phase) closes the superstep.
    bool received = false;
    auto on_step = [&]() noexcept {
      if (received) stop = finish_superstep();
      received = !received;
    };
    std::barrier barrier(static_cast<std::ptrdiff_t>(shards_), on_step);

    auto body = [&](Worker& w) {
      while (true) {
        sync_update_phase(w);
        barrier.arrive_and_wait();
        sync_receive_phase(w);
        barrier.arrive_and_wait();
        if (stop) break;
      }
    };
    std::vector<std::thread> threads;
    for (std::size_t i = 1; i < shards_; ++i) threads.emplace_back(body, std::ref(*workers_[i]));
    body(*workers_[0]);
    for (auto& t : threads) t.join();
  }

  void sync_update_phase(Worker& w) {
    w.step_updates = 0;
    double moved = 0.0;
    for (std::size_t l = 0; l < w.v.size(); ++l) {
      if (kernel_.is_zero(w.dv[l])) continue;
      V snapshot = std::move(w.dv[l]);
      w.dv[l] = kernel_.zero;
      V next = kernel_.accumulate(w.v[l], snapshot);
      const bool changed = !ValueTraits<V>::equal(next, w.v[l]);
      moved += std::abs(kernel_.progress_of(next) - kernel_.progress_of(w.v[l]));
      w.v[l] = std::move(next);
      ++w.step_updates;
      if (kernel_.idempotent && !changed) continue;
      const std::size_t i = w.gidx[l];
      for (std::size_t slot = 0; slot < graph_.out_degree_at(i); ++slot) {
        const EdgeRef e = edge_ref(i, slot);
        V m = kernel_.g(e, snapshot);
        if (kernel_.is_zero(m)) continue;
        ++message_count(w);
        const std::size_t dest = owner_[e.target_index];
        if (dest == w.id) {
          auto& slot_value = w.next[local_[e.target_index]];
          slot_value = kernel_.accumulate(slot_value, m);
        } else {
          w.out[dest].buffer(e.target, m);
        }
      }
    }
    w.updates.fetch_add(w.step_updates, std::memory_order_relaxed);
    w.movement.store(w.movement.load(std::memory_order_relaxed) + moved, std::memory_order_relaxed);
    for (std::size_t d = 0; d < shards_; ++d) {
      if (d == w.id || w.out[d].empty()) continue;
      auto batch = w.out[d].take_all();
      w.remote.fetch_add(batch.size(), std::memory_order_relaxed);
      workers_[d]->inbox.push(std::move(batch));
    }
  }

  // Sync mode has a single writer per counter, so plain increments suffice.
  std::uint64_t& message_count(Worker& w) { return sync_messages_[w.id]; }

  void sync_receive_phase(Worker& w) {
    while (auto batch = w.inbox.try_pop()) {
      for (const auto& m : *batch) {
        const auto index = graph_.find(m.dest);
        if (!index || owner_[*index] != w.id) {
          w.routing_errors.fetch_add(1, std::memory_order_relaxed);
          continue;
        }
        auto& slot_value = w.next[local_[*index]];
        slot_value = kernel_.accumulate(slot_value, m.value);
      }
      w.inbox.done_with();
    }
    double progress = 0.0;
    std::int64_t active = 0;
    for (std::size_t l = 0; l < w.v.size(); ++l) {
      w.dv[l] = std::move(w.next[l]);
      w.next[l] = kernel_.zero;
      const bool a = !kernel_.is_zero(w.dv[l]);
      w.active[l].store(a, std::memory_order_relaxed);
      active += a;
      progress += kernel_.progress_of(w.v[l]);
    }
    w.active_entries.store(active, std::memory_order_relaxed);
    w.progress.store(progress, std::memory_order_relaxed);
    w.messages.store(sync_messages_[w.id], std::memory_order_relaxed);
  }

  // Runs once per superstep with every worker parked at the barrier.
  bool finish_superstep() {
    ++stats_.supersteps;
    const double global = global_progress();
    record_sample(global);
    std::int64_t active = 0;
    for (const auto& w : workers_) active += w->active_entries.load(std::memory_order_relaxed);

    bool stop = false;
    if (active == 0) {
      stats_.converged = true;
      stop = true;
    } else if (!std::isfinite(global)) {
      stats_.diverged = true;
      stop = true;
    } else if (total_updates() > max_updates_) {
      stats_.guard_tripped = true;
      stop = true;
    } else if (config_.term_threshold > 0.0) {
      const double moved = global_movement();
      const double locals[] = {config_.reference_progress ? global : moved};
      const double target = config_.reference_progress.value_or(previous_movement_);
      if (check_termination(locals, target, config_.term_threshold).terminate) {
        stats_.converged = true;
        stop = true;
      }
      previous_movement_ = moved;
    }
    if (!stop && checkpoint_due()) {
      write_checkpoint();
      if (halt_now()) {
        stats_.killed = true;
        stop = true;
      }
    }
    return stop;
  }

  // ---- async --------------------------------------------------------------

  void run_async() {
    for (auto& wp : workers_) {
      Worker& w = *wp;
      w.receive_thread = std::thread([this, &w] { receive_loop(w); });
      w.update_thread = std::thread([this, &w] { update_loop(w); });
    }
    coordinate();

    stop_updates_.store(true);
    wake_all();
    {
      std::lock_guard lock(pause_mutex_);
      pause_cv_.notify_all();
    }
    for (auto& w : workers_) w->update_thread.join();

    if (stats_.killed) {
      abandon_.store(true);
      for (auto& w : workers_) w->inbox.close();
    } else {
      // Drain: hand every buffered message to its receiver and let the
      // receive threads apply them before the tables are read.
      for (auto& w : workers_) flush_all(*w, true);
    }
    stop_receivers_.store(true);
    for (auto& w : workers_) w->receive_thread.join();
  }

  void wake_all() {
    for (auto& w : workers_) {
      std::lock_guard lock(w->wake_mutex);
      w->wake.notify_all();
    }
  }

  void receive_loop(Worker& w) {
    while (true) {
      auto batch = w.inbox.pop(2ms);
      if (!batch) {
        if (abandon_.load()) return;
        if (stop_receivers_.load() && w.inbox.idle()) return;
        continue;
      }
      if (abandon_.load()) {
        w.inbox.done_with();
        return;
      }
      for (const auto& m : *batch) {
        const auto index = graph_.find(m.dest);
        if (!index || owner_[*index] != w.id) {
          w.routing_errors.fetch_add(1, std::memory_order_relaxed);
          continue;
        }
        apply(w, local_[*index], m.value);
      }
      add_outstanding(-static_cast<std::int64_t>(batch->size()));
      w.inbox.done_with();
    }
  }

  // Update of local entry l. Returns false when the entry had nothing pending.
  bool update_entry(Worker& w, std::size_t l) {
    w.locks[l].lock();
    if (!w.active[l].load(std::memory_order_relaxed)) {
      w.locks[l].unlock();
      return false;
    }
    V snapshot = std::move(w.dv[l]);
    w.dv[l] = kernel_.zero;
    const double before = kernel_.progress_of(w.v[l]);
    V next = kernel_.accumulate(w.v[l], snapshot);
    const bool changed = !ValueTraits<V>::equal(next, w.v[l]);
    w.v[l] = std::move(next);
    const double after = kernel_.progress_of(w.v[l]);
    w.prio[l].store(0.0, std::memory_order_relaxed);
    w.active[l].store(0, std::memory_order_relaxed);
    w.locks[l].unlock();
    w.active_entries.fetch_sub(1, std::memory_order_relaxed);

    if (!(kernel_.idempotent && !changed)) {
      const std::size_t i = w.gidx[l];
      std::uint64_t sent = 0;
      for (std::size_t slot = 0; slot < graph_.out_degree_at(i); ++slot) {
        const EdgeRef e = edge_ref(i, slot);
        V m = kernel_.g(e, snapshot);
        if (kernel_.is_zero(m)) continue;
        ++sent;
        const std::size_t dest = owner_[e.target_index];
        if (dest == w.id) {
          apply(w, local_[e.target_index], m);
        } else if (w.out[dest].buffer(e.target, m)) {
          add_outstanding(1);
        }
      }
      w.messages.fetch_add(sent, std::memory_order_relaxed);
    }
    if (before != after) {
      w.progress.store(w.progress.load(std::memory_order_relaxed) + (after - before), std::memory_order_relaxed);
      w.movement.store(w.movement.load(std::memory_order_relaxed) + std::abs(after - before),
                       std::memory_order_relaxed);
    }
    w.updates.fetch_add(1, std::memory_order_relaxed);
    // The snapshot taken above stays counted until its messages are out.
    add_outstanding(-1);
    return true;
  }

  bool pause_point(Worker&) {
    if (!pause_.load(std::memory_order_acquire)) return false;
    std::unique_lock lock(pause_mutex_);
    ++paused_;
    pause_cv_.notify_all();
    pause_cv_.wait(lock, [&] { return !pause_.load() || stop_updates_.load(); });
    --paused_;
    return true;
  }

  bool should_stop() const { return stop_updates_.load(std::memory_order_relaxed); }

  void inline_probe() {
    if (!config_.inline_check || !config_.reference_progress || config_.term_threshold <= 0.0) return;
    const double locals[] = {global_progress()};
    if (check_termination(locals, *config_.reference_progress, config_.term_threshold).terminate) {
      inline_converged_.store(true);
      stop_updates_.store(true);
      std::lock_guard lock(coord_mutex_);
      coord_cv_.notify_all();
    }
  }

  void update_loop(Worker& w) {
    const std::size_t m = w.v.size();
    std::size_t cursor = 0;
    std::vector<double> prio_copy(m);
    std::vector<std::uint8_t> active_copy(m);
    constexpr std::size_t kChunk = 256;

    while (!should_stop()) {
      if (pause_point(w)) continue;
      answer_flush_request(w);
      std::size_t done = 0;
      if (config_.mode == Mode::async_rr) {
        for (std::size_t step = 0; step < kChunk && step < m; ++step) {
          if (update_entry(w, cursor)) ++done;
          if (++cursor == m) cursor = 0;
          if (should_stop() || pause_.load(std::memory_order_relaxed)) break;
        }
      } else if (w.active_entries.load(std::memory_order_relaxed) > 0) {
        for (std::size_t l = 0; l < m; ++l) {
          prio_copy[l] = w.prio[l].load(std::memory_order_relaxed);
          active_copy[l] = w.active[l].load(std::memory_order_relaxed);
        }
        for (std::size_t l : select_priority_batch(prio_copy, active_copy, w.vids, config_.queue_fraction, w.rng)) {
          if (update_entry(w, l)) ++done;
          if (should_stop() || pause_.load(std::memory_order_relaxed)) break;
        }
      }
      if (done > 0) {
        flush_all(w, false);
        inline_probe();
        continue;
      }
      if (w.active_entries.load(std::memory_order_relaxed) > 0) continue;
      // Nothing to do locally: ship what is buffered, then sleep until a
      // receive activates something.
      flush_all(w, true);
      std::unique_lock lock(w.wake_mutex);
      w.wake.wait_for(lock, 1ms, [&] {
        return should_stop() || pause_.load() || w.active_entries.load(std::memory_order_relaxed) > 0 ||
               w.flush_ack.load(std::memory_order_relaxed) < flush_request_.load();
      });
    }
    std::lock_guard lock(pause_mutex_);
    ++exited_;
    pause_cv_.notify_all();
  }

  // Parks update threads and waits until every channel is empty and every
  // receive thread idle. Buffered msg-table entries stay where they are and
  // are recorded as pending.
  void quiesce_for_checkpoint() {
    pause_.store(true, std::memory_order_release);
    wake_all();
    {
      std::unique_lock lock(pause_mutex_);
      pause_cv_.wait(lock, [&] { return paused_ + exited_ == shards_; });
    }
    for (auto& w : workers_) {
      while (!w->inbox.wait_idle(10ms)) {
      }
    }
  }

  void resume_after_checkpoint() {
    {
      std::lock_guard lock(pause_mutex_);
      pause_.store(false, std::memory_order_release);
      pause_cv_.notify_all();
    }
  }

  // Every worker did its share of min_updates_per_check since the previous
  // check, or has nothing left to update, and every batch that was in a
  // channel at the previous check has been applied. A starved worker or
  // receive thread would otherwise make a busy worker's small deltas look
  // like global convergence.
  struct CheckMark {
    std::uint64_t updates = 0;
    std::uint64_t pushed = 0;
  };

  bool swept_since(const std::vector<CheckMark>& last) const {
    const std::size_t n = std::max<std::size_t>(1, graph_.vertex_count());
    for (std::size_t w = 0; w < workers_.size(); ++w) {
      const Worker& worker = *workers_[w];
      if (worker.inbox.completed_batches() < last[w].pushed) return false;
      if (worker.active_entries.load(std::memory_order_relaxed) == 0) continue;
      const std::uint64_t share = std::max<std::uint64_t>(1, min_updates_per_check_ * worker.v.size() / n);
      if (worker.updates.load(std::memory_order_relaxed) - last[w].updates < share) return false;
    }
    return true;
  }

  // A small progress delta can hide large deltas still sitting in msg tables
  // or channels. Has every update thread ship its msg tables, waits until
  // the receivers applied all of it, then requires the delta pending in the
  // state tables (Σ priority) to be below the threshold as well.
  bool confirm_small_pending() {
    const std::uint64_t request = flush_request_.fetch_add(1) + 1;
    wake_all();
    for (const auto& w : workers_) {
      while (w->flush_ack.load() < request) {
        if (should_stop()) return false;
        std::this_thread::sleep_for(50us);
      }
    }
    for (const auto& w : workers_) {
      const std::uint64_t pushed = w->inbox.pushed_batches();
      while (w->inbox.completed_batches() < pushed) std::this_thread::sleep_for(50us);
    }
    double pending = 0.0;
    for (const auto& w : workers_) {
      for (std::size_t l = 0; l < w->v.size(); ++l) pending += w->prio[l].load(std::memory_order_relaxed);
    }
    return pending < config_.term_threshold;
  }

  // Update-thread side of confirm_small_pending.
  void answer_flush_request(Worker& w) {
    const std::uint64_t request = flush_request_.load();
    if (w.flush_ack.load(std::memory_order_relaxed) >= request) return;
    flush_all(w, true);
    w.flush_ack.store(request);
  }

  void coordinate() {
    std::uint64_t last_updates = 0;
    std::vector<CheckMark> marks(workers_.size());
    record_sample(global_progress());
    while (true) {
      {
        std::unique_lock lock(coord_mutex_);
        coord_cv_.wait_for(lock, config_.term_check_interval, [&] {
          return outstanding_.load() == 0 || inline_converged_.load();
        });
      }
      const double global = global_progress();
      const std::uint64_t updates = total_updates();
      record_sample(global);

      if (inline_converged_.load() || outstanding_.load() == 0) {
        stats_.converged = true;
        return;
      }
      if (!std::isfinite(global)) {
        stats_.diverged = true;
        return;
      }
      if (updates > max_updates_) {
        stats_.guard_tripped = true;
        return;
      }
      const bool delta_due = config_.reference_progress || swept_since(marks);
      if (config_.term_threshold > 0.0 && updates > last_updates && delta_due) {
        std::vector<double> locals;
        for (const auto& w : workers_) {
          const auto& source = config_.reference_progress ? w->progress : w->movement;
          locals.push_back(source.load(std::memory_order_relaxed));
        }
        const double target = config_.reference_progress.value_or(previous_movement_);
        if (check_termination(locals, target, config_.term_threshold).terminate &&
            (config_.reference_progress || confirm_small_pending())) {
          stats_.converged = true;
          return;
        }
        previous_movement_ = std::accumulate(locals.begin(), locals.end(), 0.0);
        last_updates = updates;
        for (std::size_t w = 0; w < workers_.size(); ++w) {
          marks[w] = {workers_[w]->updates.load(), workers_[w]->inbox.pushed_batches()};
        }
      }
      if (checkpoint_due()) {
        quiesce_for_checkpoint();
        write_checkpoint();
        if (halt_now()) {
          stats_.killed = true;
          return;
        }
        resume_after_checkpoint();
      }
    }
  }

  // ---- result ---------------------------------------------------------------

  RunResult<V> collect() {
    RunResult<V> result;
    const std::size_t n = graph_.vertex_count();
    result.vids.assign(graph_.vertices().begin(), graph_.vertices().end());
    result.v.resize(n);
    result.dv.resize(n);
    for (auto& w : workers_) {
      for (std::size_t l = 0; l < w->v.size(); ++l) {
        result.v[w->gidx[l]] = std::move(w->v[l]);
        result.dv[w->gidx[l]] = std::move(w->dv[l]);
      }
    }
    stats_.wall_ms = elapsed_ms(start_time_);
    stats_.updates = total_updates();
    stats_.messages = total_messages();
    for (const auto& w : workers_) {
      stats_.remote_messages += w->remote.load();
      stats_.routing_errors += w->routing_errors.load();
      for (const auto& table : w->out) stats_.aggregated_away += table.aggregated_away();
    }
    stats_.final_progress = total_progress(result.v, kernel_);
    result.stats = std::move(stats_);
    result.last_snapshot = last_snapshot_;
    return result;
  }

  const Graph& graph_;
  const Kernel<V>& kernel_;
  const EngineConfig& config_;
  std::size_t shards_;
  std::uint64_t max_updates_ = 0;
  std::uint64_t min_updates_per_check_ = 1;

  std::vector<std::unique_ptr<Worker>> workers_;
  std::vector<std::uint32_t> owner_;
  std::vector<std::size_t> local_;
  std::vector<std::size_t> edge_offset_;
  std::vector<std::size_t> edge_target_;
  std::vector<std::uint64_t> sync_messages_ = std::vector<std::uint64_t>(shards_, 0);

  // Entries with dv != zero, plus msg-table entries, plus messages queued or
  // being applied. Zero exactly when no work is left anywhere.
  std::atomic<std::int64_t> outstanding_{0};
  std::mutex coord_mutex_;
  std::condition_variable coord_cv_;
  std::atomic<bool> inline_converged_{false};
  std::atomic<std::uint64_t> flush_request_{0};

  std::atomic<bool> stop_updates_{false};
  std::atomic<bool> stop_receivers_{false};
  std::atomic<bool> abandon_{false};
  std::atomic<bool> pause_{false};
  std::mutex pause_mutex_;
  std::condition_variable pause_cv_;
  std::size_t paused_ = 0;
  std::size_t exited_ = 0;

  Clock::time_point start_time_;
  Clock::time_point last_checkpoint_;
  double previous_movement_ = 0.0;
  RunStats stats_;
  std::optional<std::filesystem::path> last_snapshot_;
};

}  // namespace detail

template <class V>
RunResult<V> run(const Graph& graph, const Kernel<V>& kernel, const EngineConfig& config,
                 const StartState<V>* start = nullptr) {
  if (start && (start->v.size() != graph.vertex_count() || start->dv.size() != graph.vertex_count())) {
    throw ConfigError("start state does not match the graph");
  }
  detail::Runtime<V> runtime(graph, kernel, config, start);
  return runtime.run();
}

// State at a snapshot, with pending messages already folded into the
// destination dv. Fails on any vid mismatch with `graph`.
template <class V>
StartState<V> start_state_from(const Snapshot<V>& snap, const Graph& graph, const Kernel<V>& kernel) {
  const std::size_t n = graph.vertex_count();
  StartState<V> start;
  start.v.assign(n, kernel.zero);
  start.dv.assign(n, kernel.zero);
  std::vector<bool> seen(n, false);
  for (const auto& worker : snap.workers) {
    for (const auto& row : worker.state) {
      const auto index = graph.find(row.vid);
      if (!index) throw SnapshotError("snapshot vertex " + std::to_string(row.vid) + " is not in the graph");
      if (seen[*index]) throw SnapshotError("vertex " + std::to_string(row.vid) + " appears twice in snapshot");
      seen[*index] = true;
      start.v[*index] = row.v;
      start.dv[*index] = row.dv;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!seen[i]) throw SnapshotError("snapshot lacks vertex " + std::to_string(graph.vid_at(i)));
  }
  for (const auto& worker : snap.workers) {
    for (const auto& m : worker.pending) {
      const auto index = graph.find(m.dest);
      if (!index) throw SnapshotError("pending message for unknown vertex " + std::to_string(m.dest));
      start.dv[*index] = kernel.accumulate(start.dv[*index], m.value);
    }
  }
  return start;
}

// Resumes from a snapshot directory (or the newest complete one under a
// parent directory). The worker count may differ from the one that wrote it.
template <class V>
RunResult<V> recover(const std::filesystem::path& path, const Graph& graph, const Kernel<V>& kernel,
                     const EngineConfig& config) {
  const Snapshot<V> snap = read_snapshot<V>(path);
  if (snap.meta.kernel != kernel.name) {
    throw SnapshotError("snapshot was taken for kernel '" + snap.meta.kernel + "', not '" + kernel.name + "'");
  }
  if (snap.meta.vertices != graph.vertex_count()) {
    throw SnapshotError("snapshot has " + std::to_string(snap.meta.vertices) + " vertices, graph has " +
                        std::to_string(graph.vertex_count()));
  }
  const StartState<V> start = start_state_from(snap, graph, kernel);
  return run(graph, kernel, config, &start);
}

}  // namespace daic
