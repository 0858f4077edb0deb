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

#include "dvsim/transport.hpp"

#include <algorithm>
#include <chrono>

namespace dvsim {

InprocTransport::InprocTransport(int ranks, double watchdog_secs)
    : ranks_(ranks), watchdog_secs_(watchdog_secs), stats_(ranks) {
    if (ranks < 1) {
        throw std::invalid_argument("transport needs at least one rank");
    }
}

void InprocTransport::fail_slot_locked(detail::Slot& slot, const std::string& reason) {
    slot.failed = true;
    slot.fail_reason = reason;
    wake_locked(slot);
}

void InprocTransport::wake_locked(detail::Slot& slot) {
    if (wake_) {
        if (slot.waiter) {
            wake_(slot.waiter);
            slot.waiter = nullptr;
        }
    } else {
        cv_.notify_all();
    }
}

PendingExchange InprocTransport::begin_exchange(int self, int partner, const ExchangeTag& tag,
                                                std::span<const Amplitude> send,
                                                std::span<Amplitude> recv) {
    if (self < 0 || self >= ranks_ || partner < 0 || partner >= ranks_ || self == partner) {
        throw std::invalid_argument("bad rank pair (" + std::to_string(self) + ", " +
                                    std::to_string(partner) + ")");
    }
    const auto lo = static_cast<std::uint32_t>(std::min(self, partner));
    const auto hi = static_cast<std::uint32_t>(std::max(self, partner));
    if (tag.pair_low_rank != lo) {
        throw ProtocolError("tag mismatch: pair_low_rank " + std::to_string(tag.pair_low_rank) +
                            " for pair (" + std::to_string(self) + ", " + std::to_string(partner) +
                            ")");
    }
    if (send.size() != recv.size()) {
        throw ProtocolError("exchange buffers must have equal length");
    }

    std::lock_guard<std::mutex> lock(mu_);
    if (aborted_) {
        throw ProtocolError(abort_reason_);
    }
    const Key key{tag.gate_seq, tag.step, lo, hi};
    auto it = pending_.find(key);
    if (it == pending_.end()) {
        auto slot = std::make_shared<detail::Slot>();
        slot->first_rank = self;
        slot->first_send = send;
        slot->first_recv = recv;
        slot->tag = tag;
        pending_.emplace(key, slot);
        ++inflight_;
        return PendingExchange{std::move(slot), self};
    }

    auto slot = it->second;
    if (slot->first_rank != partner || slot->failed) {
        const std::string reason =
            slot->failed ? slot->fail_reason
                         : "tag collision: rank " + std::to_string(self) + " and rank " +
                               std::to_string(slot->first_rank) + " posted gate_seq " +
                               std::to_string(tag.gate_seq) + " step " + std::to_string(tag.step);
        fail_slot_locked(*slot, reason);
        pending_.erase(it);
        throw ProtocolError(reason);
    }
    if (slot->first_send.size() != send.size()) {
        const std::string reason = "exchange length mismatch between rank " +
                                   std::to_string(self) + " (" + std::to_string(send.size()) +
                                   " amplitudes) and rank " + std::to_string(partner) + " (" +
                                   std::to_string(slot->first_send.size()) + " amplitudes)";
        fail_slot_locked(*slot, reason);
        pending_.erase(it);
        throw ProtocolError(reason);
    }

    // Rendezvous complete: cross the payloads and credit both senders.
    std::copy(slot->first_send.begin(), slot->first_send.end(), recv.begin());
    std::copy(send.begin(), send.end(), slot->first_recv.begin());
    const std::uint64_t bytes = send.size() * kBytesPerAmplitude;
    stats_.bytes_sent_per_rank[static_cast<std::size_t>(self)] += bytes;
    stats_.bytes_sent_per_rank[static_cast<std::size_t>(partner)] += bytes;
    stats_.messages_per_rank[static_cast<std::size_t>(self)] += 1;
    stats_.messages_per_rank[static_cast<std::size_t>(partner)] += 1;
    slot->matched = true;
    pending_.erase(it);
    ++inflight_;
    wake_locked(*slot);
    return PendingExchange{std::move(slot), self};
}

bool InprocTransport::finish_poll(PendingExchange& pe) {
    std::unique_lock<std::mutex> lock(mu_);
    auto& slot = *pe.slot;
    if (wake_) {
        return slot.matched || slot.failed || aborted_;
    }
    const auto deadline = std::chrono::steady_clock::now() +
                          std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                              std::chrono::duration<double>(watchdog_secs_));
    const bool ok = cv_.wait_until(lock, deadline,
                                   [&] { return slot.matched || slot.failed || aborted_; });
    if (!ok) {
        fail_slot_locked(slot, "watchdog timeout: rank " + std::to_string(pe.rank) +
                                   " waited " + std::to_string(watchdog_secs_) +
                                   "s for a partner (gate_seq " +
                                   std::to_string(slot.tag.gate_seq) + ", step " +
                                   std::to_string(slot.tag.step) + ")");
    }
    return true;
}

void InprocTransport::finish_park(PendingExchange& pe, std::coroutine_handle<> h) {
    std::lock_guard<std::mutex> lock(mu_);
    pe.slot->waiter = h;
}

void InprocTransport::finish_settle(PendingExchange& pe) {
    std::lock_guard<std::mutex> lock(mu_);
    --inflight_;
    if (pe.slot->failed) {
        throw ProtocolError(pe.slot->fail_reason);
    }
    if (aborted_) {
        throw ProtocolError(abort_reason_);
    }
}

CommStats InprocTransport::snapshot_stats() const {
    std::lock_guard<std::mutex> lock(mu_);
    if (inflight_ != 0) {
        throw std::logic_error("snapshot_stats called with an exchange in flight");
    }
    return stats_;
}

void InprocTransport::reset_stats() {
    std::lock_guard<std::mutex> lock(mu_);
    if (inflight_ != 0) {
        throw std::logic_error("reset_stats called with an exchange in flight");
    }
    stats_ = CommStats(ranks_);
}

void InprocTransport::set_sequential_wake(std::function<void(std::coroutine_handle<>)> wake) {
    std::lock_guard<std::mutex> lock(mu_);
    wake_ = std::move(wake);
}

void InprocTransport::abort_all(const std::string& reason) {
    std::lock_guard<std::mutex> lock(mu_);
    if (aborted_) return;
    aborted_ = true;
    abort_reason_ = reason;
    for (auto& [key, slot] : pending_) {
        fail_slot_locked(*slot, reason);
    }
    cv_.notify_all();
}

void InprocTransport::clear_pending() {
    std::lock_guard<std::mutex> lock(mu_);
    pending_.clear();
    inflight_ = 0;
    aborted_ = false;
    abort_reason_.clear();
}

std::vector<int> InprocTransport::unmatched_ranks() const {
    std::lock_guard<std::mutex> lock(mu_);
    std::vector<int> out;
    for (const auto& [key, slot] : pending_) {
        if (!slot->matched) out.push_back(slot->first_rank);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace dvsim
