// Non-cyclic window-monomial enumeration with memoization.

#include "pentagram/admissible.hpp"

#include <cstdlib>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace pentagram {

namespace {

// Non-cyclic compatibility on ray indices: two blocks commute exactly when
// far enough apart. Triples occupy [center-1, center+1], singles one index.
bool window_compatible(bool ta, long ia, bool tb, long ib) {
  long d = std::labs(ia - ib);
  if (ta && tb) return d >= 6;
  if (!ta && !tb) return d >= 4;
  return d >= 5;
}

}  // namespace

const std::vector<WindowMonomial>& window_monomials(long a, long b, InvariantParity parity) {
  static std::mutex cache_mutex;
  static std::map<std::tuple<long, long, int>, std::vector<WindowMonomial>> cache;
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto key = std::make_tuple(a, b, static_cast<int>(parity));
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  long lo = std::max(a + 1, 0L), hi = b - 1;
  int single_rem = parity == InvariantParity::O ? 1 : 0;
  struct Block {
    bool is_triple;
    long index;
  };
  std::vector<Block> cand;
  for (long i = lo + 1; i <= hi - 1; ++i)
    if (i % 2 != single_rem) cand.push_back({true, i});
  for (long j = lo; j <= hi; ++j)
    if (j % 2 == single_rem) cand.push_back({false, j});

  std::vector<WindowMonomial> out;
  std::vector<std::size_t> chosen;
  auto emit = [&]() {
    WindowMonomial m;
    m.sign = 1;
    for (std::size_t c : chosen) {
      const Block& e = cand[c];
      if (e.is_triple) {
        m.triple_centers.push_back(e.index);
        m.factors.push_back(e.index - 1);
        m.factors.push_back(e.index);
        m.factors.push_back(e.index + 1);
      } else {
        m.single_indices.push_back(e.index);
        m.factors.push_back(e.index);
        m.sign = -m.sign;
      }
    }
    std::sort(m.triple_centers.begin(), m.triple_centers.end());
    std::sort(m.single_indices.begin(), m.single_indices.end());
    std::sort(m.factors.begin(), m.factors.end());
    out.push_back(std::move(m));
  };

  auto rec = [&](auto&& self, std::size_t start) -> void {
    emit();  // every partial selection, including the empty one, is a monomial
    for (std::size_t c = start; c < cand.size(); ++c) {
      bool ok = true;
      for (std::size_t p : chosen)
        if (!window_compatible(cand[p].is_triple, cand[p].index, cand[c].is_triple,
                               cand[c].index)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      chosen.push_back(c);
      self(self, c + 1);
      chosen.pop_back();
    }
  };
  rec(rec, 0);

  auto [pos, inserted] = cache.emplace(key, std::move(out));
  (void)inserted;
  return pos->second;
}

}  // namespace pentagram
