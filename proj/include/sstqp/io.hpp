#pragma once

// JSON files for instances and lifted witnesses.

#include "sstqp/core.hpp"
#include "sstqp/generate.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sstqp {

struct InstanceFile {
  SymMatrix Q;
  std::optional<int> rho;
  std::string label;
  std::optional<std::uint64_t> seed;
  std::optional<double> known_value;
};

/// Symmetrizes Q on load; differences above 1e-12 are reported in warnings.
InstanceFile parse_instance(const std::string& json_text, std::vector<std::string>* warnings = nullptr);
InstanceFile load_instance(const std::string& path, std::vector<std::string>* warnings = nullptr);
std::string dump_instance(const InstanceFile& f);
void save_instance(const InstanceFile& f, const std::string& path);
InstanceFile to_file(const GeneratedInstance& g);

std::string dump_witness(const ExtendedLiftedPoint& p, int rho);
ExtendedLiftedPoint parse_witness(const std::string& json_text, int* rho = nullptr);

/// "0.5,0.5,0" or a JSON array "[0.5, 0.5, 0]"
Vector parse_vector(const std::string& text);
/// "1,2,4" or "1-4" ranges, sorted and deduplicated
std::vector<int> parse_int_list(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace sstqp
