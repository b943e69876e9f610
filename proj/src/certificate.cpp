#include "pch/certificate.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <charconv>

#include "pch/aiger_io.hpp"
#include "pch/error.hpp"

namespace pch {

namespace {

constexpr std::string_view kDigestTag = "circuit-sha256 ";

std::vector<std::string_view> split_words(std::string_view line)
{
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const auto start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

std::optional<std::uint64_t> to_number(std::string_view w)
{
  std::uint64_t v = 0;
  const auto [p, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
  if (ec != std::errc() || p != w.data() + w.size()) return std::nullopt;
  return v;
}

}  // namespace

std::string write_certificate(const Certificate& cert)
{
  std::string out;
  for (const auto& c : cert.comments) out += "c " + c + "\n";
  if (cert.digest) out += "c " + std::string(kDigestTag) + *cert.digest + "\n";
  out += "p pch " + std::to_string(cert.clauses.size()) + "\n";
  for (const auto& clause : cert.clauses) {
    for (Lit l : clause) out += std::to_string(l) + " ";
    out += "0\n";
  }
  return out;
}

Certificate read_certificate(std::string_view text)
{
  Certificate cert;
  std::optional<std::uint64_t> declared;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  std::vector<Lit> pending;  // clauses may wrap across lines as in DIMACS
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const auto line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    const auto words = split_words(line);
    if (words.empty()) continue;

    if (words[0] == "c") {
      if (declared) continue;
      auto rest = line.substr(std::min(line.size(), line.find('c') + 1));
      if (!rest.empty() && rest[0] == ' ') rest.remove_prefix(1);
      while (!rest.empty() && rest.back() == '\r') rest.remove_suffix(1);
      if (rest.starts_with(kDigestTag))
        cert.digest = std::string(rest.substr(kDigestTag.size()));
      else
        cert.comments.emplace_back(rest);
      continue;
    }
    if (!declared) {
      if (words.size() != 3 || words[0] != "p" || words[1] != "pch" || !to_number(words[2]))
        throw Error(ErrorCode::MalformedHeader, "line " + std::to_string(line_no) +
                                                    ": expected 'p pch <clauses>'");
      declared = to_number(words[2]);
      continue;
    }
    for (auto w : words) {
      const auto v = to_number(w);
      if (!v || *v > 0xffffffffull)
        throw Error(ErrorCode::NonNumericLiteral,
                    "line " + std::to_string(line_no) + ": '" + std::string(w) + "'");
      if (*v == 0) {
        cert.clauses.push_back(std::move(pending));
        pending.clear();
      } else {
        pending.push_back(static_cast<Lit>(*v));
      }
    }
  }
  if (!declared) throw Error(ErrorCode::MalformedHeader, "missing 'p pch' header");
  if (!pending.empty())
    throw Error(ErrorCode::ClauseCountMismatch, "last clause is not terminated by 0");
  if (cert.clauses.size() != *declared)
    throw Error(ErrorCode::ClauseCountMismatch, "header declares " + std::to_string(*declared) +
                                                    " clauses, found " +
                                                    std::to_string(cert.clauses.size()));
  return cert;
}

std::string circuit_digest(const Aig& aig)
{
  const Aig bare = strip_metadata(is_canonical(aig) ? aig : canonicalize(aig));
  const std::string text = serialize_ascii(bare);
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw Error(ErrorCode::IoError, "SHA-256 computation failed");
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex += kHex[md[i] >> 4];
    hex += kHex[md[i] & 15];
  }
  return hex;
}

BoundCertificate bind(const Certificate& cert, const Aig& aig, const VarMap& vars, bool check_digest)
{
  if (check_digest && cert.digest) {
    const auto actual = circuit_digest(aig);
    if (*cert.digest != actual)
      throw Error(ErrorCode::DigestMismatch, "certificate was issued for a different circuit");
  }
  BoundCertificate out;
  for (std::size_t k = 0; k < cert.clauses.size(); ++k) {
    sat::Clause clause;
    std::vector<std::uint32_t> seen;
    for (Lit l : cert.clauses[k]) {
      const auto v = lit_var(l);
      const bool ok = v >= 1 && v <= aig.max_var && !vars.aiger_to_solver[v].is_const() &&
                      vars.latch_of(vars.aiger_to_solver[v].var()).has_value();
      if (!ok)
        throw Error(ErrorCode::NonLatchVariable, "clause " + std::to_string(k + 1) + ": literal " +
                                                     std::to_string(l) + " is not a latch");
      if (std::find(seen.begin(), seen.end(), v) != seen.end())
        throw Error(ErrorCode::DuplicateVariable,
                    "clause " + std::to_string(k + 1) + ": variable " + std::to_string(v) + " repeated");
      seen.push_back(v);
      clause.push_back(vars.lit(l));
    }
    out.formula.add(std::move(clause));
  }
  return out;
}

}  // namespace pch
