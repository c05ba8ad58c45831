#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "plane_graph.hpp"

namespace listcrit {

/// Byte transcript identifying an anchored embedded graph up to isomorphism
/// (orientation-preserving or reversing).
class CanonicalKey {
 public:
  CanonicalKey() = default;
  explicit CanonicalKey(std::vector<std::uint8_t> bytes) : bytes_(std::move(bytes)) {}

  const std::vector<std::uint8_t>& bytes() const { return bytes_; }
  bool empty() const { return bytes_.empty(); }

  std::string hex() const {
    static constexpr char digits[] = "0123456789abcdef";
    std::string s;
    s.reserve(bytes_.size() * 2);
    for (auto b : bytes_) {
      s.push_back(digits[b >> 4]);
      s.push_back(digits[b & 15]);
    }
    return s;
  }

  static CanonicalKey from_hex(std::string_view s) {
    if (s.size() % 2 != 0) throw std::invalid_argument("CanonicalKey: odd-length hex");
    auto nibble = [](char c) -> int {
      if (c >= '0' && c <= '9') return c - '0';
      if (c >= 'a' && c <= 'f') return c - 'a' + 10;
      throw std::invalid_argument("CanonicalKey: invalid hex digit");
    };
    std::vector<std::uint8_t> out(s.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i)
      out[i] = static_cast<std::uint8_t>(nibble(s[2 * i]) * 16 + nibble(s[2 * i + 1]));
    return CanonicalKey(std::move(out));
  }

  auto operator<=>(const CanonicalKey&) const = default;

 private:
  std::vector<std::uint8_t> bytes_;
};

struct CanonicalKeyHash {
  std::size_t operator()(const CanonicalKey& k) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (auto b : k.bytes()) h = (h ^ b) * 1099511628211ULL;
    return static_cast<std::size_t>(h);
  }
};

/// Transcript tokens. Vertex numbers are written as kFirstNumber + number.
namespace token {
inline constexpr std::uint8_t kNew = 0;
inline constexpr std::uint8_t kUp = 1;
inline constexpr std::uint8_t kBack = 2;
inline constexpr std::uint8_t kFirstNumber = 3;
inline constexpr std::uint8_t kSeparator = 255;
inline constexpr int kMaxVertices = kSeparator - kFirstNumber;
}  // namespace token

/// Whether a plane graph and its mirror image get the same key.
enum class Reflection { Distinguish, Quotient };

struct CanonicalForm {
  CanonicalKey key;
  std::vector<Vertex> visit_order;  // visit_order[k] = vertex numbered k
  bool mirrored = false;            // winner read rotations counterclockwise
  Dart start;
};

namespace detail {

class TranscriptWriter {
 public:
  TranscriptWriter(const PlaneGraph& g, const std::vector<std::vector<int>>& back_pos, bool mirror,
                   const std::vector<std::uint8_t>* best)
      : g_(g), back_pos_(back_pos), mirror_(mirror), best_(best), number_(g.order(), -1) {
    out_.reserve(best ? best->size() : 4 * (g.order() + g.size()));
  }

  /// Runs the DFS; returns false if abandoned because it exceeded `best`.
  bool run(Dart start, std::span<const std::vector<Vertex>> marks) {
    struct Frame {
      Vertex v;
      int index;
      int remaining;
    };
    const int root_pos = g_.position(start.from, start.to);
    std::vector<Frame> stack;
    visit(start.from);
    if (!emit(token::kNew)) return false;
    stack.push_back({start.from, root_pos, g_.degree(start.from)});
    while (!stack.empty()) {
      Frame& f = stack.back();
      if (f.remaining == 0) {
        stack.pop_back();
        if (!emit(token::kUp)) return false;
        continue;
      }
      const int d = g_.degree(f.v);
      const int idx = f.index;
      f.index = mirror_ ? (idx + d - 1) % d : (idx + 1) % d;
      --f.remaining;
      const Vertex w = g_.rotation(f.v)[idx];
      if (number_[w] < 0) {
        visit(w);
        if (!emit(token::kNew)) return false;
        const int dw = g_.degree(w);
        const int parent = back_pos_[f.v][idx];
        const int first = mirror_ ? (parent + dw - 1) % dw : (parent + 1) % dw;
        stack.push_back({w, first, dw - 1});
      } else {
        if (!emit(static_cast<std::uint8_t>(token::kFirstNumber + number_[w]))) return false;
        if (!emit(token::kBack)) return false;
      }
    }
    if (static_cast<int>(order_.size()) != g_.order())
      throw std::invalid_argument("canonical_form: graph is not connected");
    for (const auto& face : marks) {
      if (!emit(token::kSeparator)) return false;
      std::vector<int> nums;
      for (Vertex v : face) nums.push_back(number_[v]);
      std::sort(nums.begin(), nums.end());
      for (int k : nums)
        if (!emit(static_cast<std::uint8_t>(token::kFirstNumber + k))) return false;
    }
    return true;
  }

  bool strictly_less() const { return less_ || best_ == nullptr; }
  std::vector<std::uint8_t>& tokens() { return out_; }
  std::vector<Vertex>& order() { return order_; }

 private:
  void visit(Vertex v) {
    number_[v] = static_cast<int>(order_.size());
    order_.push_back(v);
  }

  bool emit(std::uint8_t t) {
    if (best_ && !less_) {
      const std::size_t i = out_.size();
      if (i < best_->size()) {
        if (t > (*best_)[i]) return false;
        if (t < (*best_)[i]) less_ = true;
      } else {
        return false;
      }
    }
    out_.push_back(t);
    return true;
  }

  const PlaneGraph& g_;
  const std::vector<std::vector<int>>& back_pos_;
  bool mirror_;
  const std::vector<std::uint8_t>* best_;
  std::vector<int> number_;
  std::vector<Vertex> order_;
  std::vector<std::uint8_t> out_;
  bool less_ = false;
};

}  // namespace detail

/// Lexicographically smallest DFS transcript over the anchor darts, reading
/// rotations clockwise and, under Reflection::Quotient, also counterclockwise.
///
/// From an anchor u -> v the DFS numbers u, then leaves every vertex through
/// its rotation starting next to the dart it arrived by. A first visit emits
/// NEW, meeting a numbered vertex emits its number and BACK, and finishing a
/// vertex emits UP. Each marked face then contributes a separator and the
/// sorted numbers of its vertices.
inline CanonicalForm canonical_form(const PlaneGraph& g, std::span<const Dart> anchors,
                                    std::span<const std::vector<Vertex>> marks,
                                    Reflection reflection = Reflection::Distinguish) {
  if (anchors.empty()) throw std::invalid_argument("canonical_form: no anchors");
  if (g.order() > token::kMaxVertices) throw std::invalid_argument("canonical_form: graph too large");
  std::vector<std::vector<int>> back_pos(g.order());
  for (Vertex v = 0; v < g.order(); ++v) {
    const auto r = g.rotation(v);
    back_pos[v].resize(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) back_pos[v][i] = g.position(r[i], v);
  }
  CanonicalForm best;
  std::vector<std::uint8_t> best_tokens;
  bool have = false;
  for (const Dart& a : anchors) {
    if (g.position(a.from, a.to) < 0) throw std::invalid_argument("canonical_form: anchor is not an edge");
    for (bool mirror : {false, true}) {
      if (mirror && reflection == Reflection::Distinguish) continue;
      detail::TranscriptWriter w(g, back_pos, mirror, have ? &best_tokens : nullptr);
      if (!w.run(a, marks)) continue;
      if (have && !w.strictly_less()) continue;
      best_tokens = std::move(w.tokens());
      best.visit_order = std::move(w.order());
      best.mirrored = mirror;
      best.start = a;
      have = true;
    }
  }
  best.key = CanonicalKey(std::move(best_tokens));
  return best;
}

/// Canonical key anchored at darts that must lie on the outer face of g; the
/// outer face vertex set is marked, as are `extra_marks`.
inline CanonicalKey canonical_key(const PlaneGraph& g, std::span<const Dart> anchors,
                                  std::span<const std::vector<Vertex>> extra_marks = {},
                                  Reflection reflection = Reflection::Distinguish) {
  if (!g.has_outer()) throw std::invalid_argument("canonical_key: graph has no outer face");
  const FaceWalk outer = face_of(g, g.outer());
  for (const Dart& a : anchors) {
    bool on_outer = false;
    for (const Dart& d : outer) on_outer = on_outer || d == a || d == a.reversed();
    if (!on_outer) throw std::invalid_argument("canonical_key: anchor edge is not on the outer face");
  }
  std::vector<Vertex> outer_vertices = walk_vertices(outer);
  std::sort(outer_vertices.begin(), outer_vertices.end());
  outer_vertices.erase(std::unique(outer_vertices.begin(), outer_vertices.end()), outer_vertices.end());
  std::vector<std::vector<Vertex>> marks{outer_vertices};
  marks.insert(marks.end(), extra_marks.begin(), extra_marks.end());
  return canonical_form(g, anchors, marks, reflection).key;
}

/// Both directions of every dart of the outer face walk.
inline std::vector<Dart> outer_face_anchors(const PlaneGraph& g) {
  std::vector<Dart> out;
  for (const Dart& d : face_of(g, g.outer())) {
    out.push_back(d);
    out.push_back(d.reversed());
  }
  return out;
}

}  // namespace listcrit
