#include "pch/witness.hpp"

#include "pch/error.hpp"

namespace pch {

namespace {

std::string bits(const std::vector<bool>& v)
{
  std::string s;
  for (bool b : v) s += b ? '1' : '0';
  return s;
}

std::vector<bool> parse_bits(std::string_view line)
{
  std::vector<bool> out;
  for (char c : line) {
    if (c == '0' || c == '1')
      out.push_back(c == '1');
    else if (c == 'x')
      out.push_back(false);
    else if (c != '\r')
      throw Error(ErrorCode::MalformedHeader, "witness line '" + std::string(line) + "'");
  }
  return out;
}

}  // namespace

std::string write_witness(const Counterexample& cex, std::size_t safety_index)
{
  std::string out = "1\nb" + std::to_string(safety_index) + "\n" + bits(cex.initial_state) + "\n";
  for (const auto& step : cex.inputs) out += bits(step) + "\n";
  out += ".\n";
  return out;
}

Counterexample read_witness(std::string_view text)
{
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(pos, end - pos);
    pos = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty() && line[0] == 'c') continue;
    lines.push_back(line);
  }
  if (lines.size() < 4 || lines[0] != "1" || lines[1].empty() ||
      (lines[1][0] != 'b' && lines[1][0] != 'j'))
    throw Error(ErrorCode::MalformedHeader, "not a counterexample witness");
  std::size_t last = 2;
  while (last < lines.size() && lines[last] != ".") ++last;
  if (last == lines.size() || last < 4)
    throw Error(ErrorCode::MalformedHeader, "witness is not terminated by '.'");
  Counterexample cex;
  cex.initial_state = parse_bits(lines[2]);
  for (std::size_t k = 3; k < last; ++k) cex.inputs.push_back(parse_bits(lines[k]));
  return cex;
}

bool replay_counterexample(const Aig& aig, std::size_t safety_index, const Counterexample& cex)
{
  if (cex.inputs.empty() || cex.initial_state.size() != aig.latches.size()) return false;
  for (std::size_t i = 0; i < aig.latches.size(); ++i) {
    const auto r = aig.latches[i].reset;
    if (r != Reset::Undefined && cex.initial_state[i] != (r == Reset::One)) return false;
  }
  for (const auto& step : cex.inputs)
    if (step.size() != aig.inputs.size()) return false;
  const auto trace = simulate_from(aig, cex.initial_state, cex.inputs);
  return safety_trace(aig, trace, safety_index).back();
}

}  // namespace pch
