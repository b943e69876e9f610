#include "pch/circuits.hpp"

#include <algorithm>
#include <bit>
#include <random>

#include "pch/aig_builder.hpp"
#include "pch/error.hpp"

namespace pch {

namespace {

using Word = std::vector<Lit>;  // little-endian bit vector

Lit equals_const(AigBuilder& b, const Word& bits, std::uint64_t value)
{
  Word terms;
  for (std::size_t i = 0; i < bits.size(); ++i) terms.push_back(bits[i] ^ (((value >> i) & 1u) ? 0u : 1u));
  return b.and_tree(terms);
}

// Ripple-carry addition mod 2^n with the carry as a three-way majority.
Word add_majority(AigBuilder& b, const Word& x, const Word& y)
{
  Word sum;
  Lit carry = kFalse;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sum.push_back(b.xor_(b.xor_(x[i], y[i]), carry));
    const Lit xy = b.and_(x[i], y[i]), xc = b.and_(x[i], carry), yc = b.and_(y[i], carry);
    carry = b.or_(xy, b.or_(xc, yc));
  }
  return sum;
}

// Same function, carry from generate/propagate.
Word add_propagate(AigBuilder& b, const Word& x, const Word& y)
{
  Word sum;
  Lit carry = kFalse;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const Lit p = b.xor_(x[i], y[i]);
    sum.push_back(b.xor_(p, carry));
    carry = b.or_(b.and_(x[i], y[i]), b.and_(p, carry));
  }
  return sum;
}

Word increment(AigBuilder& b, const Word& x)
{
  Word out;
  Lit carry = kTrue;
  for (Lit bit : x) {
    out.push_back(b.xor_(bit, carry));
    carry = b.and_(bit, carry);
  }
  return out;
}

unsigned counter_bits(unsigned width) { return static_cast<unsigned>(std::bit_width(width)); }

std::uint64_t gray(std::uint64_t v) { return v ^ (v >> 1); }

Aig multiplier_spec(unsigned w)
{
  AigBuilder b;
  Word a, m;
  for (unsigned i = 0; i < w; ++i) a.push_back(b.input());
  for (unsigned i = 0; i < w; ++i) m.push_back(b.input());
  Word cnt, acc;
  for (unsigned i = 0; i < counter_bits(w); ++i) cnt.push_back(b.latch());
  for (unsigned i = 0; i < 2 * w; ++i) acc.push_back(b.latch());

  const Lit done = equals_const(b, cnt, w);

  // m[cnt] through a mux tree; indices past the operand read 0.
  Word level(std::size_t{1} << cnt.size(), kFalse);
  std::copy(m.begin(), m.end(), level.begin());
  for (Lit sel : cnt) {
    Word up;
    for (std::size_t i = 0; i + 1 < level.size(); i += 2) up.push_back(b.mux(sel, level[i + 1], level[i]));
    level = up;
  }
  const Lit mbit = level[0];

  // a << cnt through a barrel shifter truncated to 2w bits.
  Word shifted(2 * w, kFalse);
  std::copy(a.begin(), a.end(), shifted.begin());
  for (std::size_t j = 0; j < cnt.size(); ++j) {
    const std::size_t by = std::size_t{1} << j;
    Word next(shifted.size());
    for (std::size_t i = 0; i < shifted.size(); ++i)
      next[i] = b.mux(cnt[j], i >= by ? shifted[i - by] : kFalse, shifted[i]);
    shifted = next;
  }

  Word addend;
  for (Lit s : shifted) addend.push_back(b.and_(s, mbit));
  const Word sum = add_majority(b, acc, addend);
  for (std::size_t i = 0; i < acc.size(); ++i) b.set_next(acc[i], sum[i]);

  const Word inc = increment(b, cnt);
  for (std::size_t i = 0; i < cnt.size(); ++i) b.set_next(cnt[i], b.mux(done, cnt[i], inc[i]));

  for (Lit bit : acc) b.output(b.and_(done, bit));
  b.output(done);
  return b.build();
}

Aig multiplier_impl(unsigned w)
{
  AigBuilder b;
  Word a, m;
  for (unsigned i = 0; i < w; ++i) a.push_back(b.input());
  for (unsigned i = 0; i < w; ++i) m.push_back(b.input());
  Word code, nacc;
  for (unsigned i = 0; i < counter_bits(w); ++i) code.push_back(b.latch());
  for (unsigned i = 0; i < 2 * w; ++i) nacc.push_back(b.latch(Reset::One));

  Word phase;
  for (unsigned i = 0; i <= w; ++i) phase.push_back(equals_const(b, code, gray(i)));
  const Lit done = phase[w];

  Word row(2 * w);
  for (unsigned k = 0; k < 2 * w; ++k) {
    Word terms;
    for (unsigned i = 0; i < w; ++i)
      if (k >= i && k - i < w) terms.push_back(b.and_(phase[i], b.and_(m[i], a[k - i])));
    row[k] = b.or_tree(terms);
  }

  Word acc;
  for (Lit l : nacc) acc.push_back(lit_not(l));
  const Word sum = add_propagate(b, acc, row);
  for (std::size_t i = 0; i < nacc.size(); ++i) b.set_next(nacc[i], lit_not(sum[i]));

  for (std::size_t j = 0; j < code.size(); ++j) {
    Word terms;
    for (unsigned i = 0; i <= w; ++i)
      if ((gray(std::min(i + 1, w)) >> j) & 1u) terms.push_back(phase[i]);
    b.set_next(code[j], b.or_tree(terms));
  }

  for (Lit bit : acc) b.output(b.and_(done, bit));
  b.output(done);
  return b.build();
}

std::uint64_t draw(std::mt19937_64& rng, std::size_t n) { return rng() % n; }

}  // namespace

Aig gen_counter(unsigned width, std::optional<std::uint64_t> bad_value)
{
  if (width == 0 || width > 63) throw Error(ErrorCode::InvalidWidth, "counter width " + std::to_string(width));
  if (bad_value && *bad_value >> width)
    throw Error(ErrorCode::BadValueOutOfRange,
                std::to_string(*bad_value) + " does not fit in " + std::to_string(width) + " bits");
  AigBuilder b;
  Word cnt;
  for (unsigned i = 0; i < width; ++i) cnt.push_back(b.latch());
  const Word inc = increment(b, cnt);
  for (unsigned i = 0; i < width; ++i) b.set_next(cnt[i], inc[i]);
  b.bad(bad_value ? equals_const(b, cnt, *bad_value) : kFalse);
  return b.build();
}

std::pair<Aig, Aig> gen_multiplier_pair(unsigned width)
{
  if (width < 2 || width > 31) throw Error(ErrorCode::InvalidWidth, "multiplier width " + std::to_string(width));
  return {multiplier_spec(width), multiplier_impl(width)};
}

std::string_view to_string(CertMutation m)
{
  switch (m) {
    case CertMutation::FlipLiteral: return "flip-literal";
    case CertMutation::DeleteClause: return "delete-clause";
    case CertMutation::AddClause: return "add-clause";
    case CertMutation::SwapVariable: return "swap-variable";
  }
  return "?";
}

std::string_view to_string(CircuitMutation m)
{
  switch (m) {
    case CircuitMutation::FlipAndOperand: return "flip-and-operand";
    case CircuitMutation::RewireOperand: return "rewire-operand";
    case CircuitMutation::FlipLatchReset: return "flip-latch-reset";
    case CircuitMutation::FlipSafetyBit: return "flip-safety-bit";
  }
  return "?";
}

Certificate mutate_certificate(const Certificate& cert, std::uint64_t seed, std::span<const Lit> latches,
                               CertMutation* applied)
{
  if (cert.clauses.empty()) throw Error(ErrorCode::EmptyCertificate, "nothing to mutate");

  std::vector<std::uint32_t> pool;
  if (!latches.empty()) {
    for (Lit l : latches) pool.push_back(lit_var(l));
  } else {
    for (const auto& c : cert.clauses)
      for (Lit l : c) pool.push_back(lit_var(l));
  }
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());

  // Literal occurrences, and those with a replacement variable available.
  std::vector<std::pair<std::size_t, std::size_t>> sites, swappable;
  for (std::size_t i = 0; i < cert.clauses.size(); ++i)
    for (std::size_t j = 0; j < cert.clauses[i].size(); ++j) {
      sites.emplace_back(i, j);
      if (pool.size() > cert.clauses[i].size()) swappable.emplace_back(i, j);
    }

  std::vector<CertMutation> kinds;
  if (!sites.empty()) kinds.push_back(CertMutation::FlipLiteral);
  kinds.push_back(CertMutation::DeleteClause);
  if (!pool.empty()) kinds.push_back(CertMutation::AddClause);
  if (!swappable.empty()) kinds.push_back(CertMutation::SwapVariable);

  std::mt19937_64 rng(seed);
  const auto kind = kinds[draw(rng, kinds.size())];
  if (applied) *applied = kind;
  Certificate out = cert;
  switch (kind) {
    case CertMutation::FlipLiteral: {
      const auto [i, j] = sites[draw(rng, sites.size())];
      out.clauses[i][j] = lit_not(out.clauses[i][j]);
      break;
    }
    case CertMutation::DeleteClause:
      out.clauses.erase(out.clauses.begin() + static_cast<std::ptrdiff_t>(draw(rng, out.clauses.size())));
      break;
    case CertMutation::AddClause: {
      auto vars = pool;
      const auto len = 1 + draw(rng, std::min<std::size_t>(3, vars.size()));
      std::vector<Lit> clause;
      for (std::size_t k = 0; k < len; ++k) {
        const auto pick = draw(rng, vars.size());
        clause.push_back(var_lit(vars[pick], rng() & 1u));
        vars.erase(vars.begin() + static_cast<std::ptrdiff_t>(pick));
      }
      out.clauses.push_back(std::move(clause));
      break;
    }
    case CertMutation::SwapVariable: {
      const auto [i, j] = swappable[draw(rng, swappable.size())];
      auto& clause = out.clauses[i];
      std::vector<std::uint32_t> free;
      for (auto v : pool)
        if (std::none_of(clause.begin(), clause.end(), [&](Lit l) { return lit_var(l) == v; }))
          free.push_back(v);
      clause[j] = var_lit(free[draw(rng, free.size())], lit_sign(clause[j]));
      break;
    }
  }
  return out;
}

Aig mutate_circuit(const Aig& input, std::uint64_t seed, CircuitMutation* applied)
{
  Aig aig = is_canonical(input) ? input : canonicalize(input);

  std::vector<std::pair<std::size_t, int>> operands, rewirable;
  for (std::size_t k = 0; k < aig.ands.size(); ++k)
    for (int side = 0; side < 2; ++side) {
      operands.emplace_back(k, side);
      if (lit_var(aig.ands[k].lhs) > 2) rewirable.emplace_back(k, side);
    }
  std::vector<std::size_t> resets;
  for (std::size_t i = 0; i < aig.latches.size(); ++i)
    if (aig.latches[i].reset != Reset::Undefined) resets.push_back(i);
  const std::size_t safety_sites = aig.outputs.size() + aig.bads.size();

  std::vector<CircuitMutation> kinds;
  if (!operands.empty()) kinds.push_back(CircuitMutation::FlipAndOperand);
  if (!rewirable.empty()) kinds.push_back(CircuitMutation::RewireOperand);
  if (!resets.empty()) kinds.push_back(CircuitMutation::FlipLatchReset);
  if (safety_sites > 0) kinds.push_back(CircuitMutation::FlipSafetyBit);
  if (kinds.empty()) throw Error(ErrorCode::NoGates, "circuit has no mutation site");

  std::mt19937_64 rng(seed);
  const auto kind = kinds[draw(rng, kinds.size())];
  if (applied) *applied = kind;
  switch (kind) {
    case CircuitMutation::FlipAndOperand: {
      const auto [k, side] = operands[draw(rng, operands.size())];
      auto& g = aig.ands[k];
      (side == 0 ? g.rhs0 : g.rhs1) ^= 1u;
      if (g.rhs0 < g.rhs1) std::swap(g.rhs0, g.rhs1);
      break;
    }
    case CircuitMutation::RewireOperand: {
      const auto [k, side] = rewirable[draw(rng, rewirable.size())];
      auto& g = aig.ands[k];
      Lit& op = side == 0 ? g.rhs0 : g.rhs1;
      // Any other variable defined before the gate.
      const auto old = lit_var(op);
      auto v = static_cast<std::uint32_t>(1 + draw(rng, lit_var(g.lhs) - (old == 0 ? 1 : 2)));
      if (old != 0 && v >= old) ++v;
      op = var_lit(v, lit_sign(op));
      if (g.rhs0 < g.rhs1) std::swap(g.rhs0, g.rhs1);
      break;
    }
    case CircuitMutation::FlipLatchReset: {
      auto& l = aig.latches[resets[draw(rng, resets.size())]];
      l.reset = l.reset == Reset::Zero ? Reset::One : Reset::Zero;
      break;
    }
    case CircuitMutation::FlipSafetyBit: {
      const auto site = draw(rng, safety_sites);
      if (site < aig.outputs.size())
        aig.outputs[site] ^= 1u;
      else
        aig.bads[site - aig.outputs.size()] ^= 1u;
      break;
    }
  }
  return aig;
}

}  // namespace pch
