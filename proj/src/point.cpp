#include "metgov/point.hpp"

#include <tuple>

namespace metgov {

bool operator==(const Point& a, const Point& b) {
  if (a.tag != b.tag) return false;
  switch (a.tag) {
    case Point::Tag::Index:
      return a.idx == b.idx;
    case Point::Tag::Scalar:
      return a.x == b.x;
    case Point::Tag::Vector:
      return a.vec == b.vec;
    case Point::Tag::Perm:
      return a.perm == b.perm;
    case Point::Tag::Mask:
      return a.mask == b.mask;
    case Point::Tag::Str:
      return a.str == b.str;
  }
  return false;
}

bool operator<(const Point& a, const Point& b) {
  if (a.tag != b.tag) return a.tag < b.tag;
  switch (a.tag) {
    case Point::Tag::Index:
      return a.idx < b.idx;
    case Point::Tag::Scalar:
      return a.x < b.x;
    case Point::Tag::Vector:
      return a.vec < b.vec;
    case Point::Tag::Perm:
      return a.perm < b.perm;
    case Point::Tag::Mask:
      return a.mask < b.mask;
    case Point::Tag::Str:
      // Length-then-lexicographic keeps short amendments ahead of long ones.
      if (a.str.size() != b.str.size()) return a.str.size() < b.str.size();
      return a.str < b.str;
  }
  return false;
}

}  // namespace metgov
