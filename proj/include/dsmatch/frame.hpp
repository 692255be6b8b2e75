#pragma once

#include <bit>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dsmatch/error.hpp"

namespace dsmatch {

// Subsets are bit patterns over the frame's element order, so a frame holds at
// most 64 values.
inline constexpr std::size_t kMaxFrameSize = 64;

using Mask = std::uint64_t;

// A finite universe of distinct value labels with a stable element order.
class Frame {
 public:
  explicit Frame(std::vector<std::string> labels) : labels_(std::move(labels)) {
    if (labels_.size() > kMaxFrameSize) {
      throw FrameError("frame has " + std::to_string(labels_.size()) + " elements; at most " +
                       std::to_string(kMaxFrameSize) + " are supported");
    }
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      if (labels_[i].empty()) throw FrameError("frame labels must be non-empty");
      if (!index_.emplace(labels_[i], i).second) {
        throw FrameError("duplicate frame label '" + labels_[i] + "'");
      }
    }
  }

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }

  std::optional<std::size_t> index_of(std::string_view label) const {
    const auto it = index_.find(std::string(label));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  Mask full_mask() const { return labels_.size() == 64 ? ~Mask{0} : (Mask{1} << labels_.size()) - 1; }

  friend bool operator==(const Frame& a, const Frame& b) { return a.labels_ == b.labels_; }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, std::size_t> index_;
};

using FramePtr = std::shared_ptr<const Frame>;

inline FramePtr make_frame(std::vector<std::string> labels) {
  return std::make_shared<const Frame>(std::move(labels));
}

inline bool same_frame(const FramePtr& a, const FramePtr& b) {
  return a == b || (a && b && *a == *b);
}

inline void require_same_frame(const FramePtr& a, const FramePtr& b) {
  if (!same_frame(a, b)) throw FrameMismatchError();
}

// A subset of a frame's elements.
class ValueSubset {
 public:
  ValueSubset(FramePtr frame, Mask bits) : frame_(std::move(frame)), bits_(bits) {
    if (!frame_) throw FrameError("value subset requires a frame");
    if ((bits_ & ~frame_->full_mask()) != 0) throw FrameError("value subset has indices outside its frame");
  }

  static ValueSubset empty(FramePtr frame) { return ValueSubset(std::move(frame), 0); }
  static ValueSubset whole(FramePtr frame) {
    const Mask m = frame->full_mask();
    return ValueSubset(std::move(frame), m);
  }

  // Throws FrameError on labels the frame does not contain.
  static ValueSubset of(FramePtr frame, std::span<const std::string> labels) {
    Mask bits = 0;
    for (const auto& l : labels) {
      const auto idx = frame->index_of(l);
      if (!idx) throw FrameError("value '" + l + "' is not in the frame");
      bits |= Mask{1} << *idx;
    }
    return ValueSubset(std::move(frame), bits);
  }
  static ValueSubset of(FramePtr frame, std::initializer_list<std::string> labels) {
    return of(std::move(frame), std::span<const std::string>(labels.begin(), labels.size()));
  }

  const FramePtr& frame() const { return frame_; }
  Mask bits() const { return bits_; }
  bool is_empty() const { return bits_ == 0; }
  bool is_whole() const { return bits_ == frame_->full_mask(); }
  std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  bool contains(std::size_t index) const { return index < 64 && ((bits_ >> index) & 1u) != 0; }

  bool is_subset_of(const ValueSubset& o) const {
    require_same_frame(frame_, o.frame_);
    return (bits_ & ~o.bits_) == 0;
  }
  bool intersects(const ValueSubset& o) const {
    require_same_frame(frame_, o.frame_);
    return (bits_ & o.bits_) != 0;
  }

  std::vector<std::string> labels() const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < frame_->size(); ++i) {
      if (contains(i)) out.push_back(frame_->label(i));
    }
    return out;
  }

  // Labels in frame order joined by `sep`; "{}" for the empty set.
  std::string to_string(std::string_view sep = ",") const {
    if (bits_ == 0) return "{}";
    std::string out;
    for (const auto& l : labels()) {
      if (!out.empty()) out += sep;
      out += l;
    }
    return out;
  }

  friend bool operator==(const ValueSubset& a, const ValueSubset& b) {
    return a.bits_ == b.bits_ && same_frame(a.frame_, b.frame_);
  }
  friend bool operator<(const ValueSubset& a, const ValueSubset& b) { return a.bits_ < b.bits_; }

 private:
  FramePtr frame_;
  Mask bits_;
};

inline ValueSubset complement(const ValueSubset& a) {
  return ValueSubset(a.frame(), ~a.bits() & a.frame()->full_mask());
}

inline ValueSubset operator&(const ValueSubset& a, const ValueSubset& b) {
  require_same_frame(a.frame(), b.frame());
  return ValueSubset(a.frame(), a.bits() & b.bits());
}

inline ValueSubset operator|(const ValueSubset& a, const ValueSubset& b) {
  require_same_frame(a.frame(), b.frame());
  return ValueSubset(a.frame(), a.bits() | b.bits());
}

}  // namespace dsmatch
