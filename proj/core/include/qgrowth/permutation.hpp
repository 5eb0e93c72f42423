#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace qgrowth {

// A permutation of {0, ..., degree-1}, stored as its image table.
// Composition is left-to-right on points: (a * b)(x) = b(a(x)) would be
// one convention; we use the classical right action convention
// (a * b)(x) = a(b(x)), i.e. apply b first.  All code in this library
// goes through apply()/compose() so the convention is in one place.
class Permutation {
 public:
  Permutation() = default;
  static Permutation identity(std::size_t degree);

  // images[i] = image of point i.  Throws ValidationError unless the
  // table is a bijection.
  explicit Permutation(std::vector<std::uint16_t> images);

  // Parses disjoint-cycle notation: "(0 1 2)(3 4)".  "()" is the identity.
  // Points beyond the largest mentioned point are fixed; the result is
  // padded to `degree`.  Throws ParseError on malformed text and
  // ValidationError if a point is repeated or >= degree.
  static Permutation from_cycles(const std::string& text, std::size_t degree);

  // Prints disjoint cycles with smallest moved point first per cycle and
  // cycles ordered by their smallest point; the identity prints as "()".
  std::string to_cycles() const;

  std::size_t degree() const { return images_.size(); }
  std::uint16_t apply(std::uint16_t point) const { return images_[point]; }
  std::uint16_t operator()(std::uint16_t point) const { return images_[point]; }

  Permutation compose(const Permutation& other) const;  // this after other
  Permutation inverse() const;
  Permutation power(long long exponent) const;
  bool is_identity() const;
  std::uint64_t order() const;

  // Extends the domain with fixed points.
  Permutation padded(std::size_t degree) const;

  const std::vector<std::uint16_t>& images() const { return images_; }

  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::uint16_t> images_;
};

Permutation operator*(const Permutation& a, const Permutation& b);

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept;
};

}  // namespace qgrowth
