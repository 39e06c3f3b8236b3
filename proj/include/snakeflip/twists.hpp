#pragma once

#include <string>
#include <vector>

#include "circuits.hpp"
#include "flips.hpp"
#include "posets.hpp"
#include "snake.hpp"

namespace snakeflip {

struct Twist {
  Mask ladders = 0;              // bit i-1 set for tau_i
  std::vector<int> perm;         // on lattice elements
  std::vector<int> col_perm;     // on configuration columns
  bool operator==(const Twist& o) const { return ladders == o.ladders && perm == o.perm; }
};

// The twist group of a word: ladder decomposition plus the column map.
struct TwistSetup {
  const SnakeContext* ctx = nullptr;
  LadderDecomposition dec;
  int t() const { return dec.t(); }
};

inline TwistSetup make_twist_setup(const SnakeContext& ctx) {
  TwistSetup s;
  s.ctx = &ctx;
  s.dec = ladder_decomposition(ctx.lattice, ctx.word);
  return s;
}

inline Twist identity_twist(const TwistSetup& s) {
  Twist t;
  const int n = s.ctx->lattice.size;
  t.perm.resize(static_cast<std::size_t>(n));
  std::iota(t.perm.begin(), t.perm.end(), 0);
  t.col_perm.resize(static_cast<std::size_t>(n));
  std::iota(t.col_perm.begin(), t.col_perm.end(), 0);
  return t;
}

namespace detail {
inline void fill_columns(const TwistSetup& s, Twist& t) {
  const auto& c = *s.ctx;
  t.col_perm.assign(t.perm.size(), -1);
  for (std::size_t e = 0; e < t.perm.size(); ++e)
    t.col_perm[static_cast<std::size_t>(c.element_column[e])] = c.element_column[static_cast<std::size_t>(t.perm[e])];
}
}  // namespace detail

// tau_i exchanges the two elements of every rung of ladder i.
inline Twist elementary_twist(const TwistSetup& s, int i) {
  if (i < 1 || i > s.t()) throw PreconditionError("ladder index out of range");
  Twist t = identity_twist(s);
  t.ladders = bit(i - 1);
  for (const Rung& r : s.dec.rungs[static_cast<std::size_t>(i - 1)]) {
    t.perm[static_cast<std::size_t>(r.upper)] = r.lower;
    t.perm[static_cast<std::size_t>(r.lower)] = r.upper;
  }
  detail::fill_columns(s, t);
  return t;
}

// a after b.
inline Twist compose(const TwistSetup& s, const Twist& a, const Twist& b) {
  if (a.perm.size() != b.perm.size()) throw PreconditionError("twists of different words");
  Twist t;
  t.ladders = a.ladders ^ b.ladders;
  t.perm.resize(a.perm.size());
  for (std::size_t e = 0; e < a.perm.size(); ++e) t.perm[e] = a.perm[static_cast<std::size_t>(b.perm[e])];
  detail::fill_columns(s, t);
  return t;
}

inline Twist twist_of_mask(const TwistSetup& s, Mask ladders) {
  Twist t = identity_twist(s);
  for (int i : bits_of(ladders)) t = compose(s, elementary_twist(s, i + 1), t);
  return t;
}

inline std::vector<Twist> all_twists(const TwistSetup& s) {
  if (s.t() > 20) throw OverflowError("too many ladders");
  std::vector<Twist> out;
  for (Mask m = 0; m < bit(s.t()); ++m) out.push_back(twist_of_mask(s, m));
  return out;
}

inline Mask map_columns(const Twist& t, Mask m) {
  Mask r = 0;
  for (int j : bits_of(m)) r |= bit(t.col_perm[static_cast<std::size_t>(j)]);
  return r;
}

inline Circuit twist_circuit(const Twist& t, const Circuit& z) {
  return normalize_circuit({map_columns(t, z.plus), map_columns(t, z.minus)});
}

inline Triangulation twist_simplices(const Twist& t, const Triangulation& tri) {
  std::vector<Simplex> s;
  for (Simplex x : tri.simplices) s.push_back(map_columns(t, x));
  return make_triangulation(std::move(s));
}

struct TwistImage {
  Triangulation triangulation;
  bool valid = false;
  std::string reason;
};

// Image of a triangulation; outside the canonical component the image is
// checked and reported rather than assumed.
inline TwistImage twist_triangulation(const Twist& t, const Triangulation& tri, const PointConfiguration& cfg,
                                      const BigInt& volume, const std::vector<Circuit>& circuits) {
  TwistImage r;
  r.triangulation = twist_simplices(t, tri);
  auto chk = check_triangulation(cfg, r.triangulation.simplices, volume, circuits);
  r.valid = chk.ok;
  r.reason = chk.reason;
  return r;
}

struct TwistGroupReport {
  int t = 0;
  std::size_t order = 0;
  bool distinct = false, involutive = false, commuting = false, circuits_permuted = false;
  bool ok = false;
};

inline TwistGroupReport check_twist_group(const TwistSetup& s, const std::vector<Circuit>& circuits) {
  TwistGroupReport r;
  r.t = s.t();
  auto group = all_twists(s);
  r.order = group.size();
  std::set<std::vector<int>> perms;
  for (auto& g : group) perms.insert(g.perm);
  r.distinct = perms.size() == group.size();
  Twist id = identity_twist(s);
  r.involutive = true;
  for (auto& g : group)
    if (compose(s, g, g).perm != id.perm) r.involutive = false;
  r.commuting = true;
  for (int i = 1; i <= s.t(); ++i)
    for (int j = i + 1; j <= s.t(); ++j) {
      Twist a = elementary_twist(s, i), b = elementary_twist(s, j);
      if (compose(s, a, b).perm != compose(s, b, a).perm) r.commuting = false;
    }
  std::vector<Circuit> sorted = circuits;
  std::sort(sorted.begin(), sorted.end());
  r.circuits_permuted = true;
  for (auto& g : group) {
    std::vector<Circuit> img;
    for (auto& z : circuits) img.push_back(twist_circuit(g, z));
    std::sort(img.begin(), img.end());
    if (img != sorted) r.circuits_permuted = false;
  }
  r.ok = r.distinct && r.involutive && r.commuting && r.circuits_permuted;
  return r;
}

struct CommutingSquareReport {
  std::size_t nodes = 0, checks = 0, failures = 0;
  std::size_t images_in_component = 0, images_total = 0;
  bool partial = false;
  bool ok = false;
  std::string first_failure;
};

// For every explored T, flip move (T, Z) and twist tau:
// tau(flip_Z(T)) == flip_{tau(Z)}(tau(T)).
inline CommutingSquareReport commuting_square_check(const SnakeContext& ctx, int depth, int threads = 1) {
  CommutingSquareReport r;
  auto circuits = all_circuits(ctx);
  TwistSetup s = make_twist_setup(ctx);
  auto group = all_twists(s);
  ExploreOptions opt;
  opt.threads = threads;
  opt.budget.max_depth = depth;
  FlipGraph fg = explore_flip_graph(ctx.cfg, canonical_triangulation(ctx.cfg), circuits, opt);
  r.nodes = fg.size();
  r.partial = fg.partial;
  std::unordered_map<std::vector<Simplex>, int, TriangulationKeyHash> index;
  for (std::size_t i = 0; i < fg.size(); ++i) index.emplace(fg.nodes[i].simplices, static_cast<int>(i));
  for (const Triangulation& t : fg.nodes) {
    auto moves = find_flips(t, circuits);
    for (const Twist& g : group) {
      Triangulation gt = twist_simplices(g, t);
      ++r.images_total;
      if (index.count(gt.simplices)) ++r.images_in_component;
      auto gmoves = find_flips(gt, circuits);
      for (const FlipMove& m : moves) {
        ++r.checks;
        Triangulation lhs = twist_simplices(g, apply_flip(t, m));
        Circuit gz = twist_circuit(g, m.circuit);
        Mask gside = map_columns(g, m.side);
        const FlipMove* hit = nullptr;
        for (auto& gm : gmoves)
          if (gm.circuit == gz && gm.side == gside) hit = &gm;
        if (!hit || apply_flip(gt, *hit) != lhs) {
          ++r.failures;
          if (r.first_failure.empty())
            r.first_failure = hit ? "square does not commute" : "twisted circuit is not flippable";
        }
      }
    }
  }
  r.ok = r.failures == 0;
  return r;
}

}  // namespace snakeflip
