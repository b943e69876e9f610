#include "pch/aiger_io.hpp"

#include <charconv>
#include <optional>
#include <fstream>
#include <sstream>

#include "pch/error.hpp"

namespace pch {

namespace {

//----------------------------------------------------------------------
// Line-oriented reader shared by the ASCII and binary front ends.
//----------------------------------------------------------------------

class Cursor
{
 public:
  explicit Cursor(std::string_view data) : data_(data) {}

  bool at_end() const { return pos_ >= data_.size(); }
  std::size_t pos() const { return pos_; }
  void seek(std::size_t p) { pos_ = p; }
  std::string_view rest() const { return data_.substr(pos_); }

  std::optional<std::string_view> line()
  {
    if (at_end()) return std::nullopt;
    const auto nl = data_.find('\n', pos_);
    const auto end = nl == std::string_view::npos ? data_.size() : nl;
    auto l = data_.substr(pos_, end - pos_);
    pos_ = nl == std::string_view::npos ? data_.size() : nl + 1;
    if (!l.empty() && l.back() == '\r') l.remove_suffix(1);
    return l;
  }

  int get()
  {
    if (at_end()) return -1;
    return static_cast<unsigned char>(data_[pos_++]);
  }

 private:
  std::string_view data_;
  std::size_t pos_ = 0;
};

std::vector<std::string_view> split_ws(std::string_view s)
{
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    const auto start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

std::optional<std::uint32_t> to_uint(std::string_view tok)
{
  std::uint32_t v = 0;
  const auto* end = tok.data() + tok.size();
  auto [p, ec] = std::from_chars(tok.data(), end, v);
  if (ec != std::errc() || p != end) return std::nullopt;
  return v;
}

struct Header
{
  std::uint32_t m = 0, i = 0, l = 0, o = 0, a = 0, b = 0;
};

Header parse_header(std::optional<std::string_view> line, std::string_view magic)
{
  if (!line) throw Error(ErrorCode::MalformedHeader, "empty input");
  const auto toks = split_ws(*line);
  if (toks.size() < 6 || toks.size() > 10 || toks[0] != magic)
    throw Error(ErrorCode::MalformedHeader, "expected '" + std::string(magic) + " M I L O A [B]'");
  std::vector<std::uint32_t> nums;
  for (std::size_t k = 1; k < toks.size(); ++k) {
    auto v = to_uint(toks[k]);
    if (!v) throw Error(ErrorCode::MalformedHeader, "non-numeric field '" + std::string(toks[k]) + "'");
    nums.push_back(*v);
  }
  Header h{nums[0], nums[1], nums[2], nums[3], nums[4], 0};
  if (nums.size() > 5) h.b = nums[5];
  for (std::size_t k = 6; k < nums.size(); ++k)
    if (nums[k] != 0)
      throw Error(ErrorCode::Unsupported, "constraint/justice/fairness sections are not supported");
  return h;
}

std::uint32_t lit_token(std::string_view tok, const char* what)
{
  auto v = to_uint(tok);
  if (!v)
    throw Error(ErrorCode::InvalidLiteral,
                std::string(what) + ": non-numeric literal '" + std::string(tok) + "'");
  return *v;
}

std::vector<std::string_view> need_line(Cursor& in, const char* section, std::size_t min_tokens,
                                        std::size_t max_tokens)
{
  auto l = in.line();
  if (!l) throw Error(ErrorCode::CountMismatch, std::string("input ends inside ") + section + " section");
  auto toks = split_ws(*l);
  if (toks.size() < min_tokens || toks.size() > max_tokens)
    throw Error(ErrorCode::CountMismatch, std::string("bad line in ") + section + " section: '" +
                                              std::string(*l) + "'");
  return toks;
}

Reset parse_reset(std::optional<std::string_view> tok, Lit cur)
{
  if (!tok) return Reset::Zero;
  const auto r = lit_token(*tok, "latch reset");
  if (r == 0) return Reset::Zero;
  if (r == 1) return Reset::One;
  if (r == cur) return Reset::Undefined;
  throw Error(ErrorCode::InvalidLiteral, "latch reset must be 0, 1 or the latch literal");
}

bool is_symbol_line(std::string_view l)
{
  return !l.empty() && (l[0] == 'i' || l[0] == 'l' || l[0] == 'o' || l[0] == 'b' || l[0] == 'c' ||
                        l[0] == 'j' || l[0] == 'f');
}

// Symbol table and comment section; shared tail of both formats.
void parse_trailer(Cursor& in, Aig& aig)
{
  bool in_comments = false;
  while (auto l = in.line()) {
    if (in_comments) {
      aig.comments.emplace_back(*l);
      continue;
    }
    if (l->empty() && in.at_end()) break;
    if (*l == "c" || (l->size() > 1 && (*l)[0] == 'c' && (*l)[1] == ' ')) {
      in_comments = true;
      if (l->size() > 2) aig.comments.emplace_back(l->substr(2));
      continue;
    }
    if (!is_symbol_line(*l))
      throw Error(ErrorCode::CountMismatch, "unexpected line after last section: '" + std::string(*l) + "'");
    aig.symbols.emplace_back(*l);
  }
}

void normalize_and(AndGate& g)
{
  if (g.rhs0 < g.rhs1) std::swap(g.rhs0, g.rhs1);
}

void finish(Aig& aig)
{
  auto order = check_and_order(aig);
  aig.ands = std::move(order);
}

void write_trailer(std::ostringstream& out, const Aig& aig)
{
  for (const auto& s : aig.symbols) out << s << '\n';
  if (!aig.comments.empty()) {
    out << "c\n";
    for (const auto& c : aig.comments) out << c << '\n';
  }
}

void encode_delta(std::string& out, std::uint32_t x)
{
  while (x & ~0x7fu) {
    out.push_back(static_cast<char>((x & 0x7fu) | 0x80u));
    x >>= 7;
  }
  out.push_back(static_cast<char>(x));
}

std::uint32_t decode_delta(Cursor& in)
{
  std::uint32_t x = 0;
  int shift = 0;
  for (;;) {
    const int ch = in.get();
    if (ch < 0) throw Error(ErrorCode::TruncatedDeltaStream, "input ends inside AND section");
    if (shift > 28) throw Error(ErrorCode::TruncatedDeltaStream, "delta exceeds 32 bits");
    x |= static_cast<std::uint32_t>(ch & 0x7f) << shift;
    if (!(ch & 0x80)) return x;
    shift += 7;
  }
}

}  // namespace

//----------------------------------------------------------------------
// ASCII
//----------------------------------------------------------------------

Aig parse_ascii(std::string_view text)
{
  Cursor in(text);
  const Header h = parse_header(in.line(), "aag");
  Aig aig;
  aig.max_var = h.m;
  for (std::uint32_t k = 0; k < h.i; ++k)
    aig.inputs.push_back(lit_token(need_line(in, "input", 1, 1)[0], "input"));
  for (std::uint32_t k = 0; k < h.l; ++k) {
    const auto toks = need_line(in, "latch", 2, 3);
    Latch latch;
    latch.lit = lit_token(toks[0], "latch");
    latch.next = lit_token(toks[1], "latch next");
    latch.reset = parse_reset(toks.size() > 2 ? std::optional(toks[2]) : std::nullopt, latch.lit);
    aig.latches.push_back(latch);
  }
  for (std::uint32_t k = 0; k < h.o; ++k)
    aig.outputs.push_back(lit_token(need_line(in, "output", 1, 1)[0], "output"));
  for (std::uint32_t k = 0; k < h.b; ++k)
    aig.bads.push_back(lit_token(need_line(in, "bad", 1, 1)[0], "bad"));
  for (std::uint32_t k = 0; k < h.a; ++k) {
    const auto toks = need_line(in, "and", 3, 3);
    AndGate g{lit_token(toks[0], "and"), lit_token(toks[1], "and"), lit_token(toks[2], "and")};
    normalize_and(g);
    aig.ands.push_back(g);
  }
  parse_trailer(in, aig);
  finish(aig);
  return aig;
}

std::string serialize_ascii(const Aig& aig)
{
  std::ostringstream out;
  out << "aag " << aig.max_var << ' ' << aig.inputs.size() << ' ' << aig.latches.size() << ' '
      << aig.outputs.size() << ' ' << aig.ands.size();
  if (!aig.bads.empty()) out << ' ' << aig.bads.size();
  out << '\n';
  for (Lit l : aig.inputs) out << l << '\n';
  for (const auto& latch : aig.latches) {
    out << latch.lit << ' ' << latch.next;
    if (latch.reset == Reset::One) out << " 1";
    if (latch.reset == Reset::Undefined) out << ' ' << latch.lit;
    out << '\n';
  }
  for (Lit l : aig.outputs) out << l << '\n';
  for (Lit l : aig.bads) out << l << '\n';
  for (const auto& g : aig.ands) out << g.lhs << ' ' << g.rhs0 << ' ' << g.rhs1 << '\n';
  write_trailer(out, aig);
  return out.str();
}

//----------------------------------------------------------------------
// Binary
//----------------------------------------------------------------------

Aig parse_binary(std::string_view bytes)
{
  Cursor in(bytes);
  const Header h = parse_header(in.line(), "aig");
  if (static_cast<std::uint64_t>(h.i) + h.l + h.a != h.m)
    throw Error(ErrorCode::MalformedHeader, "binary format requires M = I + L + A");
  Aig aig;
  aig.max_var = h.m;
  for (std::uint32_t k = 1; k <= h.i; ++k) aig.inputs.push_back(var_lit(k));
  for (std::uint32_t k = 0; k < h.l; ++k) {
    const auto toks = need_line(in, "latch", 1, 2);
    Latch latch;
    latch.lit = var_lit(h.i + 1 + k);
    latch.next = lit_token(toks[0], "latch next");
    latch.reset = parse_reset(toks.size() > 1 ? std::optional(toks[1]) : std::nullopt, latch.lit);
    aig.latches.push_back(latch);
  }
  for (std::uint32_t k = 0; k < h.o; ++k)
    aig.outputs.push_back(lit_token(need_line(in, "output", 1, 1)[0], "output"));
  for (std::uint32_t k = 0; k < h.b; ++k)
    aig.bads.push_back(lit_token(need_line(in, "bad", 1, 1)[0], "bad"));
  for (std::uint32_t k = 0; k < h.a; ++k) {
    const Lit lhs = var_lit(h.i + h.l + 1 + k);
    const auto d0 = decode_delta(in);
    const auto d1 = decode_delta(in);
    if (d0 == 0 || d0 > lhs)
      throw Error(ErrorCode::NonMonotoneAndIndex, "AND " + std::to_string(lhs) + ": first delta " +
                                                      std::to_string(d0));
    const Lit rhs0 = lhs - d0;
    if (d1 > rhs0)
      throw Error(ErrorCode::NonMonotoneAndIndex, "AND " + std::to_string(lhs) + ": second delta " +
                                                      std::to_string(d1));
    aig.ands.push_back({lhs, rhs0, rhs0 - d1});
  }
  parse_trailer(in, aig);
  finish(aig);
  return aig;
}

std::string serialize_binary(const Aig& input)
{
  const Aig aig = is_canonical(input) ? input : canonicalize(input);
  std::ostringstream out;
  out << "aig " << aig.max_var << ' ' << aig.inputs.size() << ' ' << aig.latches.size() << ' '
      << aig.outputs.size() << ' ' << aig.ands.size();
  if (!aig.bads.empty()) out << ' ' << aig.bads.size();
  out << '\n';
  for (const auto& latch : aig.latches) {
    out << latch.next;
    if (latch.reset == Reset::One) out << " 1";
    if (latch.reset == Reset::Undefined) out << ' ' << latch.lit;
    out << '\n';
  }
  for (Lit l : aig.outputs) out << l << '\n';
  for (Lit l : aig.bads) out << l << '\n';
  std::string deltas;
  for (const auto& g : aig.ands) {
    encode_delta(deltas, g.lhs - g.rhs0);
    encode_delta(deltas, g.rhs0 - g.rhs1);
  }
  out << deltas;
  write_trailer(out, aig);
  return out.str();
}

Aig parse_aiger(std::string_view bytes)
{
  if (bytes.substr(0, 4) == "aig ") return parse_binary(bytes);
  return parse_ascii(bytes);
}

//----------------------------------------------------------------------
// Files
//----------------------------------------------------------------------

std::string read_file(const std::filesystem::path& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view bytes)
{
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::IoError, "write failed: " + path.string());
}

Aig read_aiger_file(const std::filesystem::path& path) { return parse_aiger(read_file(path)); }

void write_aiger_file(const Aig& aig, const std::filesystem::path& path)
{
  write_file(path, path.extension() == ".aig" ? serialize_binary(aig) : serialize_ascii(aig));
}

}  // namespace pch
