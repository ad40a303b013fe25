#pragma once
#include <string>
#include <vector>

#include "mfred/exceptional.hpp"

namespace mfred {

enum class Emit { Table, Json };

Emit parse_emit(const std::string& s);  // "table" | "json"

// Output of `reducible`. trace may be null.
std::string render_reducible(const NewformData& f, const std::vector<ReducibleWitness>& ws,
                             const std::vector<CheckTrace>* trace, Emit e);

std::string render_trace(const std::vector<CheckTrace>& trace, Emit e);

struct BoundInput {
  u64 N = 1;
  int k = 2;
  DirichletChar eps;
  int degree = 0;  // 0: unknown
  bool cm = false;
};
std::string render_bounds(const BoundInput& in, const BoundReport& r, Emit e);

// Output of `check`: a witness when the quadruple passes.
std::string render_check(const std::string& ideal, const Quadruple& q,
                         const std::optional<ReducibleWitness>& w, Emit e);

std::string render_rset(const std::string& ideal, u64 l, const std::vector<Quadruple>& rs, Emit e);

}  // namespace mfred
