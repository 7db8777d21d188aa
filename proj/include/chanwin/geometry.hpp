#pragma once

#include <algorithm>
#include <optional>
#include <string>

namespace chanwin {

/// Axis-aligned pixel rectangle in parent-relative coordinates.
/// Half-open convention: a point (x, y) is inside iff
/// left <= x < right and top <= y < bottom, so adjacent rects
/// partition their union.
struct Rect {
  int left = 0;
  int top = 0;
  int right = 0;
  int bottom = 0;

  int width() const { return right - left; }
  int height() const { return bottom - top; }
  bool valid() const { return left <= right && top <= bottom; }

  bool contains(int x, int y) const {
    return left <= x && x < right && top <= y && y < bottom;
  }

  Rect translated(int dx, int dy) const {
    return Rect{left + dx, top + dy, right + dx, bottom + dy};
  }

  friend bool operator==(const Rect& a, const Rect& b) {
    return a.left == b.left && a.top == b.top && a.right == b.right &&
           a.bottom == b.bottom;
  }
  friend bool operator!=(const Rect& a, const Rect& b) { return !(a == b); }
};

/// Largest rect contained in both, or absent when the overlap has zero
/// area (touching edges do not count).
inline std::optional<Rect> rect_intersect(const Rect& a, const Rect& b) {
  Rect r{std::max(a.left, b.left), std::max(a.top, b.top),
         std::min(a.right, b.right), std::min(a.bottom, b.bottom)};
  if (r.left >= r.right || r.top >= r.bottom) return std::nullopt;
  return r;
}

inline bool rect_contains(const Rect& a, int x, int y) {
  return a.contains(x, y);
}

/// Smallest rect covering both (used for paint coalescing).
inline Rect rect_union(const Rect& a, const Rect& b) {
  return Rect{std::min(a.left, b.left), std::min(a.top, b.top),
              std::max(a.right, b.right), std::max(a.bottom, b.bottom)};
}

inline std::string to_text(const Rect& r) {
  return std::to_string(r.left) + " " + std::to_string(r.top) + " " +
         std::to_string(r.right) + " " + std::to_string(r.bottom);
}

}  // namespace chanwin
