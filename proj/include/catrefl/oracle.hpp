#pragma once
// Brute-force re-enumeration of the arrows of R~ and S~, kept as a separate
// code path (global scans over the ambient arrow lists, literal square
// checks) so the builders can be cross-checked against it.

#include <set>
#include <tuple>

#include "catrefl/engine.hpp"

namespace catrefl::oracle {

// (source entry, target entry, u, v)
using RArrow = std::tuple<RelEntry, RelEntry, ArrId, ArrId>;
// (source entry, target entry, z, v, w)
using SArrow = std::tuple<RelEntry, RelEntry, ArrId, ArrId, ArrId>;

std::set<RArrow> enumerate_r_arrows(const ReflectionData& d);
std::set<SArrow> enumerate_s_arrows(const ReflectionData& d);

// exact set comparison of the builder output against the enumerations
ValidationReport crosscheck_constructions(const ReflectionData& d, const RtResult& rt,
                                          const StResult& st);

}  // namespace catrefl::oracle
