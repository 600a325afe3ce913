#include "catrefl/oracle.hpp"

namespace catrefl::oracle {

namespace {

// composite g . f straight out of the table, no helpers from the builders
ArrId table(const FinCategory& c, const ArrId& g, const ArrId& f) {
  return c.comp.at({g, f});
}

}  // namespace

std::set<RArrow> enumerate_r_arrows(const ReflectionData& d) {
  std::set<RArrow> out;
  for (const auto& u : d.H->arrows)
    for (const auto& e : d.R) {
      if (e.cH != u.src) continue;
      for (const auto& e2 : d.R) {
        if (e2.cH != u.tgt) continue;
        for (const auto& v : d.K->arrows) {
          if (e.dK != v.src || e2.dK != v.tgt) continue;
          ArrId lhs = table(*d.U, d.J.amap.at(v.id), d.xi.at(e));
          ArrId rhs = table(*d.U, d.xi.at(e2), d.I.amap.at(u.id));
          if (lhs == rhs) out.insert({e, e2, u.id, v.id});
        }
      }
    }
  return out;
}

std::set<SArrow> enumerate_s_arrows(const ReflectionData& d) {
  std::set<SArrow> out;
  for (const auto& z : d.H->arrows)
    for (const auto& e : d.S) {
      if (e.cH != z.src) continue;
      for (const auto& e2 : d.S) {
        if (e2.cH != z.tgt) continue;
        const RelEntry& we = d.W.at(e);
        const RelEntry& we2 = d.W.at(e2);
        for (const auto& v : d.K->arrows) {
          if (e.dK != v.src || e2.dK != v.tgt) continue;
          ArrId top_l = table(*d.U, d.I.amap.at(z.id), d.chi.at(e));
          ArrId top_r = table(*d.U, d.chi.at(e2), d.J.amap.at(v.id));
          if (top_l != top_r) continue;
          for (const auto& w : d.K->arrows) {
            if (we.dK != w.src || we2.dK != w.tgt) continue;
            ArrId bot_l = table(*d.U, d.J.amap.at(w.id), d.xi.at(we));
            ArrId bot_r = table(*d.U, d.xi.at(we2), d.I.amap.at(z.id));
            if (bot_l == bot_r) out.insert({e, e2, z.id, v.id, w.id});
          }
        }
      }
    }
  return out;
}

ValidationReport crosscheck_constructions(const ReflectionData& d, const RtResult& rt,
                                          const StResult& st) {
  ValidationReport rep;

  std::set<RArrow> built_r;
  for (const auto& a : rt.cat->arrows) {
    const TripleR& p = rt.provenance.at(a.id);
    built_r.insert({rt.entries.at(a.src), rt.entries.at(a.tgt), p.u, p.v});
  }
  std::set<RArrow> expected_r = enumerate_r_arrows(d);
  for (const auto& t : expected_r)
    if (!built_r.count(t))
      rep.error("oracle-R", {entry_name(std::get<0>(t)), std::get<2>(t), std::get<3>(t)},
                "enumerated R~ arrow missing from the builder output");
  for (const auto& t : built_r)
    if (!expected_r.count(t))
      rep.error("oracle-R", {entry_name(std::get<0>(t)), std::get<2>(t), std::get<3>(t)},
                "builder produced an R~ arrow the enumeration rejects");

  std::set<SArrow> built_s;
  for (const auto& a : st.cat->arrows) {
    const TripleS& p = st.provenance.at(a.id);
    built_s.insert({st.entries.at(a.src), st.entries.at(a.tgt), p.z, p.v, p.w});
  }
  std::set<SArrow> expected_s = enumerate_s_arrows(d);
  for (const auto& t : expected_s)
    if (!built_s.count(t))
      rep.error("oracle-S",
                {entry_name(std::get<0>(t)), std::get<2>(t), std::get<3>(t), std::get<4>(t)},
                "enumerated S~ arrow missing from the builder output");
  for (const auto& t : built_s)
    if (!expected_s.count(t))
      rep.error("oracle-S",
                {entry_name(std::get<0>(t)), std::get<2>(t), std::get<3>(t), std::get<4>(t)},
                "builder produced an S~ arrow the enumeration rejects");
  return rep;
}

}  // namespace catrefl::oracle
