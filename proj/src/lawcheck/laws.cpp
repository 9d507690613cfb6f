#include "blockmem/lawcheck/laws.hpp"

#include "law_support.hpp"

#include <sstream>

namespace blockmem::lawcheck {

const MemState &Instance::state(int k) const {
  auto &slot = cache_[static_cast<std::size_t>(k)];
  if (!slot) {
    const std::vector<Step> &h = k == 0 ? h1 : k == 1 ? h2 : h3;
    slot = std::make_shared<const MemState>(replay(h, cfg));
  }
  return *slot;
}

std::string_view shape_name(Shape s) {
  switch (s) {
  case Shape::Cells:
    return "cells";
  case Shape::Single:
    return "single";
  case Shape::SameDomain:
    return "same-domain";
  case Shape::Lessdef:
    return "lessdef";
  case Shape::LessdefChain:
    return "lessdef-chain";
  case Shape::Extends:
    return "extends";
  case Shape::ExtendsChain:
    return "extends-chain";
  case Shape::Inject:
    return "inject";
  }
  return "?";
}

const std::vector<Law> &all_laws() {
  static const std::vector<Law> laws = [] {
    std::vector<Law> out = support::concrete_laws();
    for (Law &l : support::relation_laws())
      out.push_back(l);
    return out;
  }();
  return laws;
}

const Law *find_law(std::string_view name) {
  for (const Law &l : all_laws())
    if (l.name == name)
      return &l;
  return nullptr;
}

const std::vector<InventoryEntry> &unimplemented_lemmas() {
  static const std::vector<InventoryEntry> inv = {
      {"zdivide_Zmod", "Concrete_Mem", "out of scope (proof-internal)"},
      {"check_cont", "Concrete_Mem", "out of scope (proof-internal)"},
      {"check_cont_charact_if", "Concrete_Mem", "subsumed by check_cont_charact"},
      {"check_cont_charact_else", "Concrete_Mem", "subsumed by check_cont_charact"},
      {"check_cont_charact_original", "Concrete_Mem", "subsumed by check_cont_charact"},
      {"set_cont_outside_original", "Concrete_Mem", "subsumed by set_cont_outside"},
      {"set_cont_inside_original", "Concrete_Mem", "subsumed by set_cont_inside"},
      {"load_alloc_other_2", "Gen_Mem_Facts", "subsumed by load_alloc_other_"},
      {"alloc_valid_pointer_inv", "Gen_Mem_Facts", "subsumed by alloc_valid_pointer_inv_"},
      {"store_valid_pointer_inv", "Gen_Mem_Facts", "subsumed by store_valid_pointer_inv_"},
      {"free_valid_pointer_inv", "Gen_Mem_Facts", "subsumed by free_valid_pointer_inv_"},
      {"store_valid_pointer_2", "Gen_Mem_Facts", "subsumed by store_valid_pointer_"},
      {"load_alloc_same_2", "Gen_Mem_Facts", "subsumed by load_alloc_same_"},
      {"load_store_mismatch_2", "Gen_Mem_Facts", "subsumed by load_store_mismatch_"},
      {"load_store_overlap_2", "Gen_Mem_Facts", "subsumed by load_store_overlap_"},
      {"load_store_characterization_lsc_similar", "Gen_Mem_Facts",
       "subsumed by load_store_classification"},
      {"load_store_characterization_lsc_other", "Gen_Mem_Facts",
       "subsumed by load_store_classification"},
      {"load_store_characterization_lsc_overlap", "Gen_Mem_Facts",
       "subsumed by load_store_classification"},
      {"load_store_characterization_lsc_mismatch", "Gen_Mem_Facts",
       "subsumed by load_store_classification"},
      {"free_list_left_emb_original", "Rel_Mem", "subsumed by free_list_left_emb"},
      {"free_list_not_valid_block_original", "Rel_Mem", "subsumed by free_list_not_valid_block"},
      {"store_lessdef_original", "Mem_Lessdef", "subsumed by store_lessdef"},
      {"alloc_list_left_inject_original", "Mem_Inject", "subsumed by alloc_list_left_inject"},
  };
  return inv;
}

namespace {

std::string show_blocks(const std::vector<BlockId> &bs) {
  std::string s = "[";
  for (std::size_t k = 0; k < bs.size(); ++k)
    s += (k ? " " : "") + to_string(bs[k]);
  return s + "]";
}

std::string show_cells(const BlockContents &f) {
  std::string s = "{";
  bool first = true;
  for (const auto &[ofs, d] : f.cells()) {
    s += (first ? "" : ", ") + std::to_string(ofs) + ": " + support::show(Content{d});
    first = false;
  }
  return s + "}";
}

void history(std::ostringstream &os, const char *name, const std::vector<Step> &h) {
  os << name << ":\n";
  if (h.empty())
    os << "  (empty)\n";
  for (const Step &s : h)
    os << "  " << render(s) << "\n";
}

} // namespace

std::string render(const Instance &x, const Law &law) {
  using namespace param;
  std::ostringstream os;
  const unsigned p = law.params;
  switch (law.shape) {
  case Shape::Cells:
    os << "f = " << show_cells(x.f) << "\n";
    if (p & G)
      os << "g = " << show_cells(x.g) << "\n";
    break;
  case Shape::Single:
    history(os, "m1", x.h1);
    break;
  case Shape::SameDomain:
  case Shape::Lessdef:
  case Shape::Extends:
  case Shape::Inject:
    history(os, "m1", x.h1);
    history(os, "m2", x.h2);
    break;
  case Shape::LessdefChain:
  case Shape::ExtendsChain:
    history(os, "m1", x.h1);
    history(os, "m2", x.h2);
    history(os, "m3", x.h3);
    break;
  }
  if (law.shape == Shape::Inject) {
    os << "emb:";
    if (x.emb.empty())
      os << " (empty)";
    for (const auto &[b, m] : x.emb.entries())
      os << " " << to_string(b) << "->" << to_string(m.target) << "+" << m.delta;
    os << "\n";
  }
  if (p & Cfg) {
    os << "cfg: capacity=";
    if (x.cfg.capacity.max_total_bytes)
      os << *x.cfg.capacity.max_total_bytes;
    else
      os << "unlimited";
    os << " alignment=" << (x.cfg.check_alignment ? "on" : "off") << "\n";
  }
  auto kv = [&](const char *k, const std::string &v) { os << k << " = " << v << "\n"; };
  if (p & T)
    kv("t", std::string(chunk_name(x.t)));
  if (p & T2)
    kv("t2", std::string(chunk_name(x.t2)));
  if (p & B)
    kv("b", to_string(x.b));
  if (p & B2)
    kv("b2", to_string(x.b2));
  if (p & I)
    kv("i", std::to_string(x.i));
  if (p & I2)
    kv("i2", std::to_string(x.i2));
  if (p & N)
    kv("n", std::to_string(x.n));
  if (p & V)
    kv("v", to_string(x.v));
  if (p & V2)
    kv("v2", to_string(x.v2));
  if (p & C)
    kv("c", support::show(x.c));
  if (p & Delta)
    kv("delta", std::to_string(x.delta));
  if (p & Range)
    kv("lo hi", std::to_string(x.lo) + " " + std::to_string(x.hi));
  if (p & Range2)
    kv("lo2 hi2", std::to_string(x.lo2) + " " + std::to_string(x.hi2));
  if (p & Blocks)
    kv("bs", show_blocks(x.bs));
  if (p & Reqs) {
    std::string s;
    for (const auto &r : x.reqs)
      s += "(" + std::to_string(r.low) + "," + std::to_string(r.high) + ")";
    kv("reqs", s.empty() ? "[]" : s);
  }
  return os.str();
}

} // namespace blockmem::lawcheck
