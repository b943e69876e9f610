#ifndef PCH_AIGER_IO_HPP
#define PCH_AIGER_IO_HPP

#include <filesystem>
#include <string>
#include <string_view>

#include "pch/aig.hpp"

namespace pch {

// "aag M I L O A [B]" text.
Aig parse_ascii(std::string_view text);

// "aig M I L O A [B]" with the delta-encoded AND section.
Aig parse_binary(std::string_view bytes);

// Dispatches on the header magic.
Aig parse_aiger(std::string_view bytes);

std::string serialize_ascii(const Aig& aig);

// Canonicalizes first when the circuit is not already in binary order.
std::string serialize_binary(const Aig& aig);

// File helpers: ".aig" selects the binary format when writing.
Aig read_aiger_file(const std::filesystem::path& path);
void write_aiger_file(const Aig& aig, const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view bytes);

}  // namespace pch

#endif
