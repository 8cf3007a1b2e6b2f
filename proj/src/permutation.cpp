#include "malle/permutation.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include <boost/container_hash/hash.hpp>

#include "malle/error.hpp"

namespace malle {

Permutation Permutation::identity(int degree) {
  if (degree < 1) throw Error(ErrorCode::DegreeMismatch, "degree must be positive");
  std::vector<int> img(static_cast<std::size_t>(degree));
  std::iota(img.begin(), img.end(), 0);
  return Permutation(std::move(img));
}

Permutation Permutation::from_images(std::span<const int> one_based_images) {
  const int n = static_cast<int>(one_based_images.size());
  if (n == 0) throw Error(ErrorCode::DegreeMismatch, "empty image list");
  std::vector<int> img(one_based_images.size());
  std::vector<bool> seen(img.size(), false);
  for (std::size_t i = 0; i < img.size(); ++i) {
    const int v = one_based_images[i];
    if (v < 1 || v > n)
      throw Error(ErrorCode::PointOutOfRange, "image " + std::to_string(v) + " outside 1.." + std::to_string(n));
    if (seen[static_cast<std::size_t>(v - 1)])
      throw Error(ErrorCode::RepeatedPoint, "image " + std::to_string(v) + " repeated");
    seen[static_cast<std::size_t>(v - 1)] = true;
    img[i] = v - 1;
  }
  return Permutation(std::move(img));
}

std::vector<int> Permutation::images() const {
  std::vector<int> out(images_.size());
  std::transform(images_.begin(), images_.end(), out.begin(), [](int v) { return v + 1; });
  return out;
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != static_cast<int>(i)) return false;
  return true;
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) inv[static_cast<std::size_t>(images_[i])] = static_cast<int>(i);
  return Permutation(std::move(inv));
}

std::size_t Permutation::order() const {
  std::size_t result = 1;
  for (const auto& cycle : orbits(*this)) result = std::lcm(result, cycle.size());
  return result;
}

std::string Permutation::to_cycle_string() const {
  std::string out;
  for (const auto& cycle : orbits(*this)) {
    if (cycle.size() < 2) continue;
    out += '(';
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      if (k) out += ',';
      out += std::to_string(cycle[k]);
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

Permutation operator*(const Permutation& p, const Permutation& q) {
  std::vector<int> img(q.images_.size());
  for (std::size_t i = 0; i < img.size(); ++i) img[i] = p.images_[static_cast<std::size_t>(q.images_[i])];
  return Permutation(std::move(img));
}

std::strong_ordering operator<=>(const Permutation& a, const Permutation& b) {
  if (auto c = a.images_.size() <=> b.images_.size(); c != 0) return c;
  return std::lexicographical_compare_three_way(a.images_.begin(), a.images_.end(), b.images_.begin(),
                                                b.images_.end());
}

Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.degree() != q.degree())
    throw Error(ErrorCode::DegreeMismatch,
                "cannot compose degree " + std::to_string(p.degree()) + " with " + std::to_string(q.degree()));
  return p * q;
}

Permutation parse_cycle_notation(std::string_view text, int degree) {
  std::vector<int> img = Permutation::identity(degree).images_;
  std::vector<bool> used(static_cast<std::size_t>(degree), false);
  const auto malformed = [&](const std::string& why) {
    return Error(ErrorCode::MalformedCycle, why + " in '" + std::string(text) + "'");
  };

  std::size_t i = 0;
  const auto skip_space = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_space();
  while (i < text.size()) {
    if (text[i] != '(') throw malformed("expected '('");
    ++i;
    std::vector<int> cycle;
    skip_space();
    if (i < text.size() && text[i] == ')') {
      ++i;  // "()" is the identity
      skip_space();
      continue;
    }
    while (true) {
      skip_space();
      const std::size_t start = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (start == i) throw malformed("expected a point");
      const std::string token(text.substr(start, i - start));
      const long point = token.size() > 9 ? -1 : std::stol(token);
      if (point < 1 || point > degree)
        throw Error(ErrorCode::PointOutOfRange,
                    "point " + token + " outside 1.." + std::to_string(degree));
      if (used[static_cast<std::size_t>(point - 1)])
        throw Error(ErrorCode::RepeatedPoint, "point " + token + " occurs twice");
      used[static_cast<std::size_t>(point - 1)] = true;
      cycle.push_back(static_cast<int>(point) - 1);
      skip_space();
      if (i >= text.size()) throw malformed("unbalanced parenthesis");
      if (text[i] == ',') {
        ++i;
        continue;
      }
      if (text[i] == ')') {
        ++i;
        break;
      }
      throw malformed("unexpected character");
    }
    for (std::size_t k = 0; k < cycle.size(); ++k)
      img[static_cast<std::size_t>(cycle[k])] = cycle[(k + 1) % cycle.size()];
    skip_space();
  }
  return Permutation(std::move(img));
}

std::vector<std::vector<int>> orbits(const Permutation& p) {
  const auto raw = p.raw();
  std::vector<bool> seen(raw.size(), false);
  std::vector<std::vector<int>> cells;
  for (std::size_t start = 0; start < raw.size(); ++start) {
    if (seen[start]) continue;
    std::vector<int> cell;
    for (std::size_t x = start; !seen[x]; x = static_cast<std::size_t>(raw[x])) {
      seen[x] = true;
      cell.push_back(static_cast<int>(x) + 1);
    }
    cells.push_back(std::move(cell));
  }
  return cells;
}

int index_of(const Permutation& p) { return p.degree() - static_cast<int>(orbits(p).size()); }

std::size_t PermutationHash::operator()(const Permutation& p) const noexcept {
  const auto raw = p.raw();
  return boost::hash_range(raw.begin(), raw.end());
}

}  // namespace malle
