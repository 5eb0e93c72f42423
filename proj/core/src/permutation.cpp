#include "qgrowth/permutation.hpp"

#include <numeric>
#include <sstream>

#include "qgrowth/errors.hpp"

namespace qgrowth {

Permutation Permutation::identity(std::size_t degree) {
  std::vector<std::uint16_t> images(degree);
  std::iota(images.begin(), images.end(), 0);
  return Permutation(std::move(images));
}

Permutation::Permutation(std::vector<std::uint16_t> images)
    : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (std::uint16_t img : images_) {
    if (img >= images_.size() || seen[img]) {
      throw ValidationError("image table is not a bijection");
    }
    seen[img] = true;
  }
}

Permutation Permutation::from_cycles(const std::string& text,
                                     std::size_t degree) {
  std::vector<std::uint16_t> images(degree);
  std::iota(images.begin(), images.end(), 0);
  std::vector<bool> used(degree, false);

  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip_ws();
  if (pos == text.size()) throw ParseError("empty permutation text");
  while (pos < text.size()) {
    skip_ws();
    if (pos == text.size()) break;
    if (text[pos] != '(') throw ParseError("expected '(' in cycle notation");
    ++pos;
    std::vector<std::uint16_t> cycle;
    while (true) {
      skip_ws();
      if (pos == text.size()) throw ParseError("unterminated cycle");
      if (text[pos] == ')') {
        ++pos;
        break;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[pos]))) {
        throw ParseError("expected point or ')' in cycle");
      }
      unsigned long value = 0;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        value = value * 10 + static_cast<unsigned long>(text[pos] - '0');
        if (value > 0xFFFF) throw ParseError("point out of range");
        ++pos;
      }
      cycle.push_back(static_cast<std::uint16_t>(value));
      skip_ws();
      if (pos < text.size() && text[pos] == ',') ++pos;
    }
    if (cycle.empty()) continue;  // "()" inside longer text: identity factor
    for (std::uint16_t p : cycle) {
      if (p >= degree) throw ValidationError("cycle point exceeds degree");
      if (used[p]) throw ValidationError("point repeated across cycles");
      used[p] = true;
    }
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      images[cycle[i]] = cycle[(i + 1) % cycle.size()];
    }
  }
  skip_ws();
  if (pos != text.size()) throw ParseError("trailing text after cycles");
  return Permutation(std::move(images));
}

std::string Permutation::to_cycles() const {
  std::ostringstream out;
  std::vector<bool> seen(images_.size(), false);
  bool any = false;
  for (std::size_t start = 0; start < images_.size(); ++start) {
    if (seen[start] || images_[start] == start) continue;
    any = true;
    out << '(';
    std::uint16_t p = static_cast<std::uint16_t>(start);
    bool first = true;
    while (!seen[p]) {
      seen[p] = true;
      if (!first) out << ' ';
      out << p;
      first = false;
      p = images_[p];
    }
    out << ')';
  }
  if (!any) return "()";
  return out.str();
}

Permutation Permutation::compose(const Permutation& other) const {
  if (degree() != other.degree()) {
    throw DegreeMismatch("composing permutations of different degree");
  }
  std::vector<std::uint16_t> images(degree());
  for (std::size_t x = 0; x < degree(); ++x) {
    images[x] = images_[other.images_[x]];
  }
  Permutation result;
  result.images_ = std::move(images);  // already a bijection; skip revalidation
  return result;
}

Permutation Permutation::inverse() const {
  std::vector<std::uint16_t> images(degree());
  for (std::size_t x = 0; x < degree(); ++x) {
    images[images_[x]] = static_cast<std::uint16_t>(x);
  }
  Permutation result;
  result.images_ = std::move(images);
  return result;
}

Permutation Permutation::power(long long exponent) const {
  Permutation base = exponent < 0 ? inverse() : *this;
  unsigned long long e =
      exponent < 0 ? static_cast<unsigned long long>(-exponent)
                   : static_cast<unsigned long long>(exponent);
  Permutation acc = identity(degree());
  while (e > 0) {
    if (e & 1ULL) acc = acc.compose(base);
    base = base.compose(base);
    e >>= 1ULL;
  }
  return acc;
}

bool Permutation::is_identity() const {
  for (std::size_t x = 0; x < images_.size(); ++x) {
    if (images_[x] != x) return false;
  }
  return true;
}

std::uint64_t Permutation::order() const {
  // lcm of cycle lengths
  std::vector<bool> seen(images_.size(), false);
  std::uint64_t result = 1;
  for (std::size_t start = 0; start < images_.size(); ++start) {
    if (seen[start]) continue;
    std::uint64_t len = 0;
    std::uint16_t p = static_cast<std::uint16_t>(start);
    while (!seen[p]) {
      seen[p] = true;
      p = images_[p];
      ++len;
    }
    result = std::lcm(result, len);
  }
  return result;
}

Permutation Permutation::padded(std::size_t degree) const {
  if (degree < images_.size()) {
    throw DegreeMismatch("cannot shrink a permutation's domain");
  }
  std::vector<std::uint16_t> images(images_);
  images.reserve(degree);
  for (std::size_t x = images_.size(); x < degree; ++x) {
    images.push_back(static_cast<std::uint16_t>(x));
  }
  Permutation result;
  result.images_ = std::move(images);
  return result;
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  return a.compose(b);
}

std::size_t PermutationHash::operator()(const Permutation& p) const noexcept {
  // FNV-1a over the image bytes
  std::uint64_t h = 1469598103934665603ULL;
  for (std::uint16_t v : p.images()) {
    h ^= static_cast<std::uint64_t>(v & 0xFF);
    h *= 1099511628211ULL;
    h ^= static_cast<std::uint64_t>(v >> 8);
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

}  // namespace qgrowth
