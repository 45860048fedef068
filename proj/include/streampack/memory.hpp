#pragma once

#include <algorithm>
#include <cstdint>

namespace streampack {

/// Input-derived words held by a summary, in the word model: one stored tuple,
/// counter, job or container counts as one entry.
struct MemoryReport {
  std::int64_t stored_entries = 0;
  std::int64_t peak_entries = 0;
  std::int64_t stream_length = 0;
};

class MemoryAccountant {
 public:
  /// Record the state after one more stream element.
  void observe(std::int64_t stored) noexcept {
    ++length_;
    current_ = stored;
    peak_ = std::max(peak_, stored);
  }
  /// Record a state change that did not consume a stream element.
  void update(std::int64_t stored) noexcept {
    current_ = stored;
    peak_ = std::max(peak_, stored);
  }
  MemoryReport report() const noexcept { return {current_, peak_, length_}; }

 private:
  std::int64_t current_ = 0;
  std::int64_t peak_ = 0;
  std::int64_t length_ = 0;
};

}  // namespace streampack
