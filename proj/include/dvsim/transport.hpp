// Copyright 2026 The dvsim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <condition_variable>
#include <coroutine>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dvsim/types.hpp"

namespace dvsim {

/// Transport-level failure: tag collision, length mismatch, watchdog
/// timeout, deadlock, or a peer that died mid-exchange. Aborts the run.
class ProtocolError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Deterministic message matching key. Unique per exchange within a run;
/// both sides of a pair post the same tag.
struct ExchangeTag {
    std::uint64_t gate_seq = 0;
    std::uint32_t step = 0;
    std::uint32_t pair_low_rank = 0;
};

/// Exact payload accounting: 16 bytes per amplitude, no envelope overhead.
/// bytes_sent_per_rank[r] counts rank r's outbound payload; the total is the
/// sum over ranks.
class CommStats {
  public:
    CommStats() = default;
    explicit CommStats(int ranks)
        : bytes_sent_per_rank(static_cast<std::size_t>(ranks), 0),
          messages_per_rank(static_cast<std::size_t>(ranks), 0) {}

    std::uint64_t bytes_total() const {
        std::uint64_t total = 0;
        for (std::uint64_t b : bytes_sent_per_rank) total += b;
        return total;
    }
    std::uint64_t messages_total() const {
        std::uint64_t total = 0;
        for (std::uint64_t c : messages_per_rank) total += c;
        return total;
    }

    bool operator==(const CommStats&) const = default;

    std::vector<std::uint64_t> bytes_sent_per_rank;
    std::vector<std::uint64_t> messages_per_rank;
};

namespace detail {
struct Slot {
    int first_rank = -1;
    std::span<const Amplitude> first_send;
    std::span<Amplitude> first_recv;
    bool matched = false;
    bool failed = false;
    std::string fail_reason;
    std::coroutine_handle<> waiter;
    ExchangeTag tag;
};
}  // namespace detail

struct PendingExchange {
    std::shared_ptr<detail::Slot> slot;
    int rank = -1;
};

/// Pairwise rendezvous exchange between rank workers. begin_exchange posts
/// a buffer pair and never blocks; the awaiter returned by finish_exchange
/// completes once the partner's matching post has arrived and both payloads
/// have crossed. exchange() is the synchronous begin+finish composition.
///
/// dist_ops is written against this interface only, so a networked transport
/// can be slotted in without touching it.
class Transport {
  public:
    virtual ~Transport() = default;

    virtual int ranks() const = 0;

    virtual PendingExchange begin_exchange(int self, int partner, const ExchangeTag& tag,
                                           std::span<const Amplitude> send,
                                           std::span<Amplitude> recv) = 0;

    // finish_exchange hooks. finish_poll returns true when the exchange is
    // complete (the threaded transport blocks inside it); finish_park stores
    // the coroutine to resume when the partner arrives; finish_settle
    // rethrows any failure and closes out the exchange.
    virtual bool finish_poll(PendingExchange& pe) = 0;
    virtual void finish_park(PendingExchange& pe, std::coroutine_handle<> h) = 0;
    virtual void finish_settle(PendingExchange& pe) = 0;

    /// Copy of the counters. Only valid at quiescent points.
    virtual CommStats snapshot_stats() const = 0;
    virtual void reset_stats() = 0;

    struct FinishAwaiter {
        Transport* transport;
        PendingExchange pe;
        bool await_ready() { return transport->finish_poll(pe); }
        void await_suspend(std::coroutine_handle<> h) { transport->finish_park(pe, h); }
        void await_resume() { transport->finish_settle(pe); }
    };

    FinishAwaiter finish_exchange(PendingExchange pe) { return {this, std::move(pe)}; }

    FinishAwaiter exchange(int self, int partner, const ExchangeTag& tag,
                           std::span<const Amplitude> send, std::span<Amplitude> recv) {
        return finish_exchange(begin_exchange(self, partner, tag, send, recv));
    }
};

/// In-process transport for simulated ranks. Matching is by tag, never by
/// arrival order, which makes runs deterministic under any scheduling. Two
/// completion modes:
///   - threaded (default): finish blocks on a condition variable, guarded by
///     a watchdog timeout that converts lost partners into ProtocolErrors;
///   - sequential: a wake callback hands parked coroutines back to the
///     single-thread scheduler.
class InprocTransport final : public Transport {
  public:
    explicit InprocTransport(int ranks, double watchdog_secs = 30.0);

    int ranks() const override { return ranks_; }

    PendingExchange begin_exchange(int self, int partner, const ExchangeTag& tag,
                                   std::span<const Amplitude> send,
                                   std::span<Amplitude> recv) override;
    bool finish_poll(PendingExchange& pe) override;
    void finish_park(PendingExchange& pe, std::coroutine_handle<> h) override;
    void finish_settle(PendingExchange& pe) override;

    CommStats snapshot_stats() const override;
    void reset_stats() override;

    /// Install the sequential-mode wake callback (nullptr restores threaded
    /// blocking behaviour).
    void set_sequential_wake(std::function<void(std::coroutine_handle<>)> wake);

    /// Fail every pending and future exchange with `reason`.
    void abort_all(const std::string& reason);

    /// Drop unmatched posts and clear the abort flag; counters are kept.
    void clear_pending();

    void set_watchdog_secs(double secs) { watchdog_secs_ = secs; }

    /// Ranks with a posted exchange that never matched (deadlock diagnostics).
    std::vector<int> unmatched_ranks() const;

  private:
    struct Key {
        std::uint64_t gate_seq;
        std::uint32_t step;
        std::uint32_t lo;
        std::uint32_t hi;
        auto operator<=>(const Key&) const = default;
    };

    void fail_slot_locked(detail::Slot& slot, const std::string& reason);
    void wake_locked(detail::Slot& slot);

    const int ranks_;
    double watchdog_secs_;
    mutable std::mutex mu_;
    std::condition_variable cv_;
    std::map<Key, std::shared_ptr<detail::Slot>> pending_;
    CommStats stats_;
    std::int64_t inflight_ = 0;
    bool aborted_ = false;
    std::string abort_reason_;
    std::function<void(std::coroutine_handle<>)> wake_;
};

}  // namespace dvsim
