#include "tpg/region.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace tpg {

ClockSpace clock_space(const TimedGame& g) {
  if (g.clock_count() >= kMaxClocks) throw std::invalid_argument("too many clocks (at most " + std::to_string(kMaxClocks - 1) + ")");
  ClockSpace cs;
  for (const auto& c : g.clocks) {
    cs.ceiling.push_back(c.ceiling);
    cs.names.push_back(c.name);
  }
  return cs;
}

ClockSpace ext_clock_space(const TimedGame& g) {
  ClockSpace cs = clock_space(g);
  cs.wrap = cs.size();
  cs.ceiling.push_back(1);
  cs.names.push_back("z");
  return cs;
}

bool operator<(const Region& a, const Region& b) {
  return std::tie(a.loc, a.nclocks, a.h, a.cell) < std::tie(b.loc, b.nclocks, b.h, b.cell);
}

std::size_t RegionHash::operator()(const Region& r) const noexcept {
  std::size_t h = 1469598103934665603ull;
  auto mix = [&](std::uint64_t v) {
    h ^= v;
    h *= 1099511628211ull;
  };
  mix(r.loc);
  for (int x = 0; x < r.nclocks; ++x) mix((static_cast<std::uint64_t>(r.h[x]) << 8) | static_cast<std::uint8_t>(r.cell[x]));
  return h;
}

void canonicalize(Region& r) {
  std::array<int, kMaxClocks + 1> remap{};
  std::array<bool, kMaxClocks + 1> used{};
  for (int x = 0; x < r.nclocks; ++x)
    if (r.cell[x] > 0) used[r.cell[x]] = true;
  int next = 0;
  for (int i = 1; i <= kMaxClocks; ++i)
    if (used[i]) remap[i] = ++next;
  for (int x = 0; x < r.nclocks; ++x)
    if (r.cell[x] > 0) r.cell[x] = static_cast<std::int8_t>(remap[r.cell[x]]);
  for (int x = r.nclocks; x < kMaxClocks; ++x) {
    r.h[x] = 0;
    r.cell[x] = 0;
  }
  r.ncells = static_cast<std::uint8_t>(next);
}

Region region_of(const ClockSpace& cs, int loc, const Valuation& v) {
  if (static_cast<int>(v.size()) < cs.size()) throw std::invalid_argument("valuation is missing a clock");
  Region r;
  r.loc = static_cast<std::uint32_t>(loc);
  r.nclocks = static_cast<std::uint8_t>(cs.size());
  std::vector<Rational> fracs;
  std::vector<Rational> frac_of_clock(cs.size());
  for (int x = 0; x < cs.size(); ++x) {
    if (v[x] < 0) throw std::invalid_argument("negative clock value");
    if (x != cs.wrap && v[x] > cs.ceiling[x]) {
      r.h[x] = static_cast<std::uint16_t>(cs.ceiling[x]);
      r.cell[x] = -1;
      continue;
    }
    Rational fl = floor_of(v[x]);
    if (x == cs.wrap && fl != 0) throw std::invalid_argument("wrapping clock must lie in [0,1)");
    r.h[x] = static_cast<std::uint16_t>(to_int64(fl));
    frac_of_clock[x] = v[x] - fl;
    if (frac_of_clock[x] == 0) {
      r.cell[x] = 0;
    } else {
      fracs.push_back(frac_of_clock[x]);
    }
  }
  std::sort(fracs.begin(), fracs.end());
  fracs.erase(std::unique(fracs.begin(), fracs.end()), fracs.end());
  for (int x = 0; x < cs.size(); ++x) {
    if (r.cell[x] < 0 || frac_of_clock[x] == 0) continue;
    auto it = std::lower_bound(fracs.begin(), fracs.end(), frac_of_clock[x]);
    r.cell[x] = static_cast<std::int8_t>(1 + (it - fracs.begin()));
  }
  r.ncells = static_cast<std::uint8_t>(fracs.size());
  return r;
}

Region region_of(const TimedGame& g, const ConcreteState& s) { return region_of(clock_space(g), s.location, s.valuation); }

TimeStep time_successor(const ClockSpace& cs, const Region& r) {
  TimeStep out{r, false, false};
  Region& n = out.region;
  bool any_zero = false;
  for (int x = 0; x < r.nclocks; ++x) any_zero |= r.cell[x] == 0;
  if (any_zero) {
    // Integral clocks leave their integer: below the ceiling they become the
    // smallest positive fraction, at the ceiling they go above it.
    bool opens = false;
    for (int x = 0; x < r.nclocks; ++x)
      if (r.cell[x] == 0 && (x == cs.wrap || r.h[x] < cs.ceiling[x])) opens = true;
    for (int x = 0; x < r.nclocks; ++x) {
      if (r.cell[x] > 0) {
        if (opens) ++n.cell[x];
      } else if (r.cell[x] == 0) {
        if (x == cs.wrap || r.h[x] < cs.ceiling[x]) {
          n.cell[x] = 1;
        } else {
          n.cell[x] = -1;
        }
      }
    }
    n.ncells = static_cast<std::uint8_t>(r.ncells + (opens ? 1 : 0));
    return out;
  }
  if (r.ncells == 0) {
    out.absorbing = true;
    return out;
  }
  // The largest fractional cell reaches the next integer.
  for (int x = 0; x < r.nclocks; ++x) {
    if (r.cell[x] != r.ncells) continue;
    n.cell[x] = 0;
    if (x == cs.wrap) {
      n.h[x] = 0;
      out.wrapped = true;
    } else {
      n.h[x] = static_cast<std::uint16_t>(r.h[x] + 1);
    }
  }
  n.ncells = static_cast<std::uint8_t>(r.ncells - 1);
  return out;
}

Region time_successor(const TimedGame& g, const Region& r) { return time_successor(clock_space(g), r).region; }

Region reset_region(const Region& r, const std::vector<int>& clocks) {
  Region n = r;
  for (int x : clocks) {
    if (x < 0 || x >= r.nclocks) throw std::out_of_range("reset of an unknown clock");
    n.h[x] = 0;
    n.cell[x] = 0;
  }
  canonicalize(n);
  return n;
}

Region with_location(Region r, int loc) {
  r.loc = static_cast<std::uint32_t>(loc);
  return r;
}

Valuation representative(const ClockSpace& cs, const Region& r) {
  Valuation v(r.nclocks);
  for (int x = 0; x < r.nclocks; ++x) {
    if (r.cell[x] < 0) {
      v[x] = Rational(cs.ceiling.at(x)) + Rational(1, 2);
    } else {
      Rational f(r.cell[x], r.ncells + 2);
      f.canonicalize();
      v[x] = Rational(r.h[x]) + f;
      v[x].canonicalize();
    }
  }
  return v;
}

namespace {

bool atom_on_region(const ClockSpace& cs, const Region& r, const Constraint& a) {
  const int x = a.clock();
  if (x < 0 || x >= r.nclocks) throw std::out_of_range("constraint clock outside the region");
  const std::int64_t k = a.constant();
  if (k > cs.ceiling[x]) throw std::invalid_argument("constant " + std::to_string(k) + " exceeds the ceiling of clock " + cs.names.at(x));
  const std::int64_t h = r.h[x];
  if (r.cell[x] < 0) {
    return a.cmp() == Cmp::Ge || a.cmp() == Cmp::Gt;
  }
  if (r.cell[x] == 0) {
    switch (a.cmp()) {
      case Cmp::Le: return h <= k;
      case Cmp::Lt: return h < k;
      case Cmp::Ge: return h >= k;
      case Cmp::Gt: return h > k;
      case Cmp::Eq: return h == k;
    }
  }
  switch (a.cmp()) {  // h < value < h+1
    case Cmp::Le:
    case Cmp::Lt: return h < k;
    case Cmp::Ge:
    case Cmp::Gt: return h >= k;
    case Cmp::Eq: return false;
  }
  return false;
}

}  // namespace

bool region_satisfies(const ClockSpace& cs, const Region& r, const Constraint& c) {
  std::optional<Valuation> rep;
  return c.evaluate([&](const Constraint& a) {
    if (a.kind() == Constraint::Kind::Atom) return atom_on_region(cs, r, a);
    const int x = a.clock(), y = a.clock2();
    if (r.cell[x] >= 0 && r.cell[y] >= 0) {
      const std::int64_t d = static_cast<std::int64_t>(r.h[x]) - r.h[y];
      const std::int64_t k = a.constant();
      if (r.cell[x] == r.cell[y]) return a.strict() ? d < k : d <= k;
      if (r.cell[x] < r.cell[y]) return d <= k;  // x - y in (d-1, d)
      return d + 1 <= k;                         // x - y in (d, d+1)
    }
    // Above-ceiling clocks: eroded guards are unions of regions, so any member decides.
    if (!rep) rep = representative(cs, r);
    Rational diff = (*rep)[x] - (*rep)[y];
    return a.strict() ? diff < a.constant() : diff <= a.constant();
  });
}

bool region_satisfies(const TimedGame& g, const Region& r, const Constraint& c) {
  return region_satisfies(clock_space(g), r, c);
}

std::vector<Region> enumerate_regions(const TimedGame& g) {
  const ClockSpace cs = clock_space(g);
  const int n = cs.size();
  std::vector<Region> out;
  // status per clock: (h, kind) with kind 0 integral, 1 fractional, 2 above
  std::vector<std::pair<int, int>> status(n);
  std::vector<int> frac_clocks;
  std::function<void(int, Region&)> assign_cells;
  for (std::size_t l = 0; l < g.locations.size(); ++l) {
    Region base;
    base.loc = static_cast<std::uint32_t>(l);
    base.nclocks = static_cast<std::uint8_t>(n);
    std::function<void(int)> rec = [&](int x) {
      if (x == n) {
        frac_clocks.clear();
        Region r = base;
        for (int y = 0; y < n; ++y) {
          r.h[y] = static_cast<std::uint16_t>(status[y].first);
          r.cell[y] = status[y].second == 2 ? -1 : 0;
          if (status[y].second == 1) frac_clocks.push_back(y);
        }
        // ordered set partitions of the fractional clocks
        const int m = static_cast<int>(frac_clocks.size());
        std::vector<int> cellv(m, 1);
        std::function<void(int, int)> part = [&](int i, int used) {
          if (i == m) {
            Region q = r;
            for (int t = 0; t < m; ++t) q.cell[frac_clocks[t]] = static_cast<std::int8_t>(cellv[t]);
            q.ncells = static_cast<std::uint8_t>(used);
            // only surjective labelings are canonical
            std::vector<bool> seen(used + 1, false);
            for (int t = 0; t < m; ++t) seen[cellv[t]] = true;
            for (int c = 1; c <= used; ++c)
              if (!seen[c]) return;
            if (region_satisfies(cs, q, g.locations[l].invariant)) out.push_back(q);
            return;
          }
          for (int c = 1; c <= m; ++c) {
            cellv[i] = c;
            part(i + 1, std::max(used, c));
          }
        };
        part(0, 0);
        return;
      }
      for (int h = 0; h <= cs.ceiling[x]; ++h) {
        status[x] = {h, 0};
        rec(x + 1);
        if (h < cs.ceiling[x]) {
          status[x] = {h, 1};
          rec(x + 1);
        }
      }
      status[x] = {cs.ceiling[x], 2};
      rec(x + 1);
    };
    rec(0);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Region> succr(const ClockSpace& cs, const Region& r, int j) {
  std::vector<Region> out{r};
  Region cur = r;
  while (static_cast<int>(out.size()) < j) {
    TimeStep s = time_successor(cs, cur);
    if (s.absorbing) break;
    cur = s.region;
    out.push_back(cur);
  }
  return out;
}

bool is_open(const Region& r) {
  for (int x = 0; x < r.nclocks; ++x)
    if (r.cell[x] == 0) return false;
  return true;
}

Region project(const Region& r, int n) {
  Region p = r;
  p.nclocks = static_cast<std::uint8_t>(n);
  canonicalize(p);
  return p;
}

Region extend_zero(const Region& r) {
  if (r.nclocks >= kMaxClocks) throw std::invalid_argument("too many clocks");
  Region e = r;
  e.h[r.nclocks] = 0;
  e.cell[r.nclocks] = 0;
  e.nclocks = static_cast<std::uint8_t>(r.nclocks + 1);
  return e;
}

std::string to_string(const ClockSpace& cs, const Region& r, const std::vector<std::string>& locations) {
  std::ostringstream os;
  os << (r.loc < locations.size() ? locations[r.loc] : "l" + std::to_string(r.loc)) << " | int ";
  bool first = true;
  for (int x = 0; x < r.nclocks; ++x) {
    if (r.cell[x] < 0) continue;
    os << (first ? "" : ",") << cs.names[x] << "=" << r.h[x];
    first = false;
  }
  if (first) os << "-";
  os << " | frac [";
  auto cell_set = [&](int c) {
    std::string s = "{";
    bool f = true;
    for (int x = 0; x < r.nclocks; ++x)
      if (r.cell[x] == c) {
        s += (f ? "" : ",") + cs.names[x];
        f = false;
      }
    return s + "}";
  };
  bool any = false;
  bool zero = false;
  for (int x = 0; x < r.nclocks; ++x) zero |= r.cell[x] == 0;
  if (zero) {
    os << " " << cell_set(0) << "=0";
    any = true;
  }
  for (int c = 1; c <= r.ncells; ++c) {
    os << (any ? " < " : " ") << cell_set(c);
    any = true;
  }
  os << " ] | above " << cell_set(-1);
  return os.str();
}

std::string to_string(const TimedGame& g, const Region& r) {
  return to_string(clock_space(g), r, g.location_names());
}

}  // namespace tpg
