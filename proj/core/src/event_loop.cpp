// -*- c-basic-offset: 4; indent-tabs-mode: nil -*-
#include "pcoflow/event_loop.h"

#include <stdexcept>
#include <string>

namespace pcoflow {

std::uint64_t EventLoop::schedule(SimTime at, EventKind kind, std::function<void()> fn) {
    if (at < now_)
        throw std::logic_error("EventLoop::schedule: event at t=" + std::to_string(at) +
                               " ps is in the past (now=" + std::to_string(now_) + " ps)");
    std::uint64_t seq = next_seq_++;
    queue_.push(Entry{at, seq, kind, std::move(fn)});
    return seq;
}

EventLoop::Stats EventLoop::run(SimTime until) {
    while (!queue_.empty() && queue_.top().at <= until) {
        // Move the handler out before popping: it may schedule new events.
        Entry e = std::move(const_cast<Entry&>(queue_.top()));
        queue_.pop();
        now_ = e.at;
        ++processed_;
        e.fn();
    }
    Stats s;
    s.scheduled = next_seq_;
    s.processed = processed_;
    s.unprocessed = queue_.size();
    return s;
}

} // namespace pcoflow
