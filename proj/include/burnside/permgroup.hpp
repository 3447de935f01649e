#pragma once

// Generator-driven permutation group computations.
//
// Groups act on the right: the image of point i under g is g(i), and
// compose(a, b) applies a first and then b, so e_i g = e_{i+1} for the cycle
// g = (0,1,...,d-1). No stabilizer chains are built; orbits, orbitals, block
// systems and small closures are computed directly from the generators.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace burnside {

using Point = std::uint32_t;

class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(std::vector<Point> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (Point x : images_) {
      if (x >= images_.size() || seen[x]) throw std::invalid_argument("Permutation: images are not a bijection");
      seen[x] = true;
    }
  }

  static Permutation identity(std::size_t degree) {
    std::vector<Point> im(degree);
    std::iota(im.begin(), im.end(), Point{0});
    return Permutation(std::move(im));
  }

  std::size_t degree() const { return images_.size(); }
  Point operator()(Point i) const { return images_[i]; }
  std::span<const Point> images() const { return images_; }

  bool is_identity() const {
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (images_[i] != i) return false;
    return true;
  }

  bool operator==(const Permutation&) const = default;
  auto operator<=>(const Permutation&) const = default;

 private:
  std::vector<Point> images_;
};

/// a then b.
inline Permutation compose(const Permutation& a, const Permutation& b) {
  if (a.degree() != b.degree()) throw std::invalid_argument("compose: degree mismatch");
  std::vector<Point> im(a.degree());
  for (std::size_t i = 0; i < im.size(); ++i) im[i] = b(a(static_cast<Point>(i)));
  return Permutation(std::move(im));
}

inline Permutation inverse(const Permutation& a) {
  std::vector<Point> im(a.degree());
  for (std::size_t i = 0; i < im.size(); ++i) im[a(static_cast<Point>(i))] = static_cast<Point>(i);
  return Permutation(std::move(im));
}

inline Permutation power(const Permutation& a, long long k) {
  const auto n = static_cast<long long>(a.degree());
  Permutation base = k < 0 ? inverse(a) : a;
  k = k < 0 ? -k : k;
  Permutation out = Permutation::identity(static_cast<std::size_t>(n));
  while (k > 0) {
    if (k & 1) out = compose(out, base);
    base = compose(base, base);
    k >>= 1;
  }
  return out;
}

/// The cycle points[0] -> points[1] -> ... -> points[0] on `degree` points.
inline Permutation cycle(std::size_t degree, std::span<const Point> points) {
  std::vector<Point> out(degree);
  std::iota(out.begin(), out.end(), Point{0});
  std::vector<bool> used(degree, false);
  for (std::size_t k = 0; k < points.size(); ++k) {
    const Point p = points[k];
    if (p >= degree) throw std::invalid_argument("cycle: point out of range");
    if (used[p]) throw std::invalid_argument("cycle: repeated point");
    used[p] = true;
    out[p] = points[(k + 1) % points.size()];
  }
  return Permutation(std::move(out));
}

inline Permutation cycle(std::size_t degree, const std::vector<Point>& points) {
  return cycle(degree, std::span<const Point>(points));
}

inline Permutation cycle(std::size_t degree, std::initializer_list<Point> points) {
  return cycle(degree, std::span<const Point>(points.begin(), points.size()));
}

/// Parses disjoint-or-not cycles such as "(0,1,2,3)(4,5)" and composes them
/// left to right. Points may be separated by commas or blanks. With
/// degree == 0 the degree is one more than the largest point mentioned.
inline Permutation parse_cycles(std::string_view text, std::size_t degree = 0) {
  std::vector<std::vector<Point>> cycles;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip();
  while (i < text.size()) {
    if (text[i] != '(') throw std::invalid_argument("parse_cycles: expected '(' in \"" + std::string(text) + "\"");
    ++i;
    cycles.emplace_back();
    for (;;) {
      skip();
      if (i < text.size() && text[i] == ')') {
        ++i;
        break;
      }
      if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i]))) {
        throw std::invalid_argument("parse_cycles: malformed cycle in \"" + std::string(text) + "\"");
      }
      unsigned long v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + static_cast<unsigned long>(text[i] - '0');
        if (v > 1'000'000) throw std::invalid_argument("parse_cycles: point too large");
        ++i;
      }
      cycles.back().push_back(static_cast<Point>(v));
      skip();
      if (i < text.size() && text[i] == ',') ++i;
    }
    skip();
  }
  std::size_t needed = 0;
  for (const auto& c : cycles)
    for (Point p : c) needed = std::max<std::size_t>(needed, p + 1);
  if (degree == 0) degree = needed;
  if (needed > degree) throw std::invalid_argument("parse_cycles: point exceeds degree");
  Permutation out = Permutation::identity(degree);
  for (const auto& c : cycles) out = compose(out, cycle(degree, c));
  return out;
}

inline std::string to_cycle_string(const Permutation& g) {
  std::string out;
  std::vector<bool> seen(g.degree(), false);
  for (Point i = 0; i < g.degree(); ++i) {
    if (seen[i] || g(i) == i) continue;
    out += '(';
    for (Point j = i; !seen[j]; j = g(j)) {
      if (j != i) out += ',';
      out += std::to_string(j);
      seen[j] = true;
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

class PermGroup {
 public:
  explicit PermGroup(std::vector<Permutation> generators) : gens_(std::move(generators)) {
    if (gens_.empty()) throw std::invalid_argument("PermGroup: at least one generator required");
    for (const auto& g : gens_)
      if (g.degree() != gens_.front().degree()) throw std::invalid_argument("PermGroup: generator degrees differ");
  }

  std::size_t degree() const { return gens_.front().degree(); }
  const std::vector<Permutation>& generators() const { return gens_; }

 private:
  std::vector<Permutation> gens_;
};

namespace detail {

struct UnionFind {
  std::vector<std::uint32_t> parent;

  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }

  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }

  bool unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent[b] = a;
    return true;
  }
};

// Classes of a labeling, each ascending, ordered by least member.
inline std::vector<std::vector<Point>> classes_of(UnionFind& uf, std::size_t n) {
  std::vector<std::vector<Point>> out;
  std::vector<std::size_t> slot(n, SIZE_MAX);
  for (Point i = 0; i < n; ++i) {
    const auto r = uf.find(i);
    if (slot[r] == SIZE_MAX) {
      slot[r] = out.size();
      out.emplace_back();
    }
    out[slot[r]].push_back(i);
  }
  return out;
}

}  // namespace detail

inline std::vector<std::vector<Point>> orbits(const PermGroup& G) {
  detail::UnionFind uf(G.degree());
  for (const auto& g : G.generators())
    for (Point i = 0; i < G.degree(); ++i) uf.unite(i, g(i));
  return detail::classes_of(uf, G.degree());
}

inline bool is_transitive(const PermGroup& G) { return orbits(G).size() == 1; }

/// Orbits of the stabilizer of `base`, from orbitals: the suborbit of x is
/// the set of y with (base, y) in the G-orbit of (base, x) on ordered pairs.
/// {base} comes first, the rest ordered by least member.
inline std::vector<std::vector<Point>> suborbits(const PermGroup& G, Point base = 0) {
  const std::size_t m = G.degree();
  if (base >= m) throw std::invalid_argument("suborbits: base point out of range");
  if (!is_transitive(G)) throw std::invalid_argument("suborbits: group is not transitive");
  detail::UnionFind uf(m * m);
  for (const auto& g : G.generators())
    for (Point a = 0; a < m; ++a)
      for (Point b = 0; b < m; ++b)
        uf.unite(static_cast<std::uint32_t>(a * m + b), static_cast<std::uint32_t>(g(a) * m + g(b)));
  std::vector<std::vector<Point>> out;
  std::vector<std::size_t> slot(m * m, SIZE_MAX);
  out.push_back({base});
  slot[uf.find(static_cast<std::uint32_t>(base * m + base))] = 0;
  for (Point y = 0; y < m; ++y) {
    const auto r = uf.find(static_cast<std::uint32_t>(base * m + y));
    if (slot[r] == SIZE_MAX) {
      slot[r] = out.size();
      out.emplace_back();
    }
    if (y != base) out[slot[r]].push_back(y);
  }
  return out;
}

inline bool is_2transitive(const PermGroup& G) {
  const auto s = suborbits(G);
  return G.degree() <= 1 || s.size() == 2;
}

struct BlockSystem {
  std::vector<std::size_t> block_of;  // point -> block id, ids by least member
  std::size_t block_size = 0;
  std::size_t block_count = 0;

  std::vector<std::vector<Point>> blocks() const {
    std::vector<std::vector<Point>> out(block_count);
    for (Point i = 0; i < block_of.size(); ++i) out[block_of[i]].push_back(i);
    return out;
  }

  bool trivial() const { return block_count <= 1 || block_size <= 1; }
  bool operator==(const BlockSystem&) const = default;
};

/// Finest block system in which alpha and beta share a block (union-find
/// merge closed under the generators).
inline BlockSystem minimal_blocks(const PermGroup& G, Point alpha, Point beta) {
  const std::size_t m = G.degree();
  if (alpha >= m || beta >= m) throw std::invalid_argument("minimal_blocks: point out of range");
  if (alpha == beta) throw std::invalid_argument("minimal_blocks: points must differ");
  if (!is_transitive(G)) throw std::invalid_argument("minimal_blocks: group is not transitive");
  detail::UnionFind uf(m);
  std::deque<std::pair<Point, Point>> queue;
  uf.unite(alpha, beta);
  queue.emplace_back(alpha, beta);
  while (!queue.empty()) {
    const auto [a, b] = queue.front();
    queue.pop_front();
    for (const auto& g : G.generators()) {
      const Point ga = g(a), gb = g(b);
      if (uf.unite(ga, gb)) queue.emplace_back(ga, gb);
    }
  }
  const auto cls = detail::classes_of(uf, m);
  BlockSystem out;
  out.block_of.assign(m, 0);
  for (std::size_t k = 0; k < cls.size(); ++k)
    for (Point p : cls[k]) out.block_of[p] = k;
  out.block_count = cls.size();
  out.block_size = cls.front().size();
  for (const auto& c : cls)
    if (c.size() != out.block_size) throw std::logic_error("minimal_blocks: unequal block sizes");
  return out;
}

/// A non-trivial block system if one exists (first beta in ascending order
/// whose minimal system with 0 is proper).
inline std::optional<BlockSystem> find_block_system(const PermGroup& G) {
  if (!is_transitive(G)) throw std::invalid_argument("find_block_system: group is not transitive");
  for (Point b = 1; b < G.degree(); ++b) {
    auto sys = minimal_blocks(G, 0, b);
    if (sys.block_count > 1) return sys;
  }
  return std::nullopt;
}

inline bool is_primitive(const PermGroup& G) { return !find_block_system(G).has_value(); }

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const {
    std::size_t h = 1469598103934665603ull;
    for (Point x : p.images()) h = (h ^ x) * 1099511628211ull;
    return h;
  }
};

/// All elements of <gens>, or nothing if there are more than `limit`.
inline std::optional<std::vector<Permutation>> enumerate_elements(std::span<const Permutation> gens,
                                                                  std::size_t limit) {
  if (gens.empty()) return std::nullopt;
  std::unordered_set<Permutation, PermutationHash> seen;
  std::vector<Permutation> out{Permutation::identity(gens.front().degree())};
  seen.insert(out.front());
  for (std::size_t k = 0; k < out.size(); ++k) {
    for (const auto& g : gens) {
      auto h = compose(out[k], g);
      if (seen.insert(h).second) {
        if (out.size() >= limit) return std::nullopt;
        out.push_back(std::move(h));
      }
    }
  }
  return out;
}

/// Whether <gens> is transitive of order exactly `degree`.
inline bool regular_check(std::size_t degree, std::span<const Permutation> gens) {
  if (gens.empty()) return degree == 1;
  for (const auto& g : gens)
    if (g.degree() != degree) throw std::invalid_argument("regular_check: degree mismatch");
  if (!is_transitive(PermGroup({gens.begin(), gens.end()}))) return false;
  const auto elems = enumerate_elements(gens, degree);
  return elems && elems->size() == degree;
}

/// Conjugates G by the relabeling x -> label[x].
inline PermGroup relabel(const PermGroup& G, std::span<const Point> label) {
  std::vector<Permutation> gens;
  for (const auto& g : G.generators()) {
    std::vector<Point> im(G.degree());
    for (Point x = 0; x < G.degree(); ++x) im[label[x]] = label[g(x)];
    gens.emplace_back(std::move(im));
  }
  return PermGroup(std::move(gens));
}

// Named families -----------------------------------------------------------

inline Permutation standard_cycle(std::size_t d) {
  std::vector<Point> im(d);
  for (std::size_t i = 0; i < d; ++i) im[i] = static_cast<Point>((i + 1) % d);
  return Permutation(std::move(im));
}

inline PermGroup cyclic_group(std::size_t d) { return PermGroup({standard_cycle(d)}); }

/// The d-cycle and the reflection i -> -i mod d.
inline PermGroup dihedral_group(std::size_t d) {
  std::vector<Point> im(d);
  for (std::size_t i = 0; i < d; ++i) im[i] = static_cast<Point>((d - i) % d);
  return PermGroup({standard_cycle(d), Permutation(std::move(im))});
}

inline PermGroup symmetric_group(std::size_t d) {
  if (d <= 2) return PermGroup({standard_cycle(d)});
  return PermGroup({standard_cycle(d), cycle(d, {0, 1})});
}

/// <i -> i+1, i -> a*i> on Z/dZ, hcf(a, d) = 1.
inline PermGroup affine_group(std::size_t d, std::size_t a) {
  if (std::gcd(a, d) != 1) throw std::invalid_argument("affine_group: multiplier must be a unit mod d");
  std::vector<Point> im(d);
  for (std::size_t i = 0; i < d; ++i) im[i] = static_cast<Point>((a * i) % d);
  return PermGroup({standard_cycle(d), Permutation(std::move(im))});
}

struct WreathGroup {
  std::size_t d = 0;
  PermGroup group;
  std::vector<Permutation> regular;  // (g_d, 1) and (1, g_d)
};

namespace detail {

// (x, y) -> (f(x), y) or (x, f(y)) on points x*d + y.
inline Permutation on_coordinate(const Permutation& f, std::size_t d, bool first) {
  std::vector<Point> im(d * d);
  for (Point x = 0; x < d; ++x)
    for (Point y = 0; y < d; ++y)
      im[x * d + y] = first ? static_cast<Point>(f(x) * d + y) : static_cast<Point>(x * d + f(y));
  return Permutation(std::move(im));
}

}  // namespace detail

/// S_d wr C_2 in product action on {0..d-1}^2, the pair (i, i') encoded as
/// i*d + i'. Generators: S_d on each coordinate and the coordinate swap.
inline WreathGroup wreath_product(std::size_t d) {
  if (d < 2) throw std::invalid_argument("wreath_product: d must be at least 2");
  const auto sym = symmetric_group(d);
  std::vector<Permutation> gens;
  for (const auto& s : sym.generators()) gens.push_back(detail::on_coordinate(s, d, true));
  for (const auto& s : sym.generators()) gens.push_back(detail::on_coordinate(s, d, false));
  std::vector<Point> swap(d * d);
  for (Point x = 0; x < d; ++x)
    for (Point y = 0; y < d; ++y) swap[x * d + y] = static_cast<Point>(y * d + x);
  gens.emplace_back(std::move(swap));
  const auto g = standard_cycle(d);
  return {d, PermGroup(std::move(gens)), {detail::on_coordinate(g, d, true), detail::on_coordinate(g, d, false)}};
}

inline PermGroup wreath_product_action(std::size_t d) { return wreath_product(d).group; }

/// Inside the d = 4 product action: <(0,1,2,3)> on the first coordinate and
/// <(0,1)(2,3), (0,2)(1,3)> on the second, a regular C4 x C2 x C2.
inline std::vector<Permutation> c4_c2_c2_generators() {
  return {detail::on_coordinate(standard_cycle(4), 4, true),
          detail::on_coordinate(parse_cycles("(0,1)(2,3)", 4), 4, false),
          detail::on_coordinate(parse_cycles("(0,2)(1,3)", 4), 4, false)};
}

}  // namespace burnside
