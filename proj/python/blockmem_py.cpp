// Python bindings. Values map to Python as: undef -> blockmem.undef,
// Vint -> int, Vfloat -> float, Vptr -> blockmem.Ptr. Block ids are ints.
// Operations that fail return None.

#include "blockmem/lawcheck/runner.hpp"
#include "blockmem/relations.hpp"
#include "blockmem/trace.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace blockmem;

namespace {

struct Undef {};

struct Ptr {
  std::int64_t block;
  std::int64_t ofs;
  bool operator==(const Ptr &) const = default;
};

py::object to_py(const Value &v) {
  return std::visit(
      [](const auto &x) -> py::object {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Vundef>)
          return py::cast(Undef{});
        else if constexpr (std::is_same_v<T, Vint>)
          return py::int_(x.n);
        else if constexpr (std::is_same_v<T, Vfloat>)
          return py::float_(x.value());
        else
          return py::cast(Ptr{x.block.id, x.ofs});
      },
      v);
}

Value from_py(const py::handle &h) {
  if (py::isinstance<Undef>(h))
    return Vundef{};
  if (py::isinstance<Ptr>(h)) {
    const Ptr p = h.cast<Ptr>();
    return Vptr{BlockId{p.block}, p.ofs};
  }
  if (py::isinstance<py::bool_>(h))
    throw py::type_error("bool is not a memory value");
  if (py::isinstance<py::int_>(h))
    return Vint{h.cast<std::int64_t>()};
  if (py::isinstance<py::float_>(h))
    return Vfloat::of(h.cast<double>());
  throw py::type_error("expected undef, int, float or Ptr");
}

template <class T> py::object opt(const std::optional<T> &o) {
  return o ? py::cast(*o) : py::none();
}

Embedding to_emb(const std::map<std::int64_t, std::pair<std::int64_t, std::int64_t>> &d) {
  Embedding::Map m;
  for (const auto &[src, tgt] : d)
    m.emplace(BlockId{src}, Mapping{BlockId{tgt.first}, tgt.second});
  return Embedding(std::move(m));
}

MemConfig make_config(std::optional<std::uint64_t> capacity, bool check_alignment) {
  MemConfig cfg;
  if (capacity)
    cfg.capacity = CapacityPolicy::bytes(*capacity);
  cfg.check_alignment = check_alignment;
  return cfg;
}

} // namespace

PYBIND11_MODULE(blockmem, m) {
  m.doc() = "Executable block memory model";

  py::class_<Undef>(m, "Undef")
      .def("__repr__", [](const Undef &) { return "undef"; })
      .def("__eq__", [](const Undef &, const py::object &o) { return py::isinstance<Undef>(o); })
      .def("__hash__", [](const Undef &) { return 0; });
  m.attr("undef") = py::cast(Undef{});

  py::class_<Ptr>(m, "Ptr")
      .def(py::init<std::int64_t, std::int64_t>(), py::arg("block"), py::arg("ofs"))
      .def_readonly("block", &Ptr::block)
      .def_readonly("ofs", &Ptr::ofs)
      .def("__eq__", [](const Ptr &a, const py::object &o) {
        return py::isinstance<Ptr>(o) && a == o.cast<Ptr>();
      })
      .def("__hash__", [](const Ptr &p) { return py::hash(py::make_tuple(p.block, p.ofs)); })
      .def("__repr__", [](const Ptr &p) {
        return "Ptr(" + std::to_string(p.block) + ", " + std::to_string(p.ofs) + ")";
      });

  py::enum_<Chunk>(m, "Chunk")
      .value("int8s", Chunk::Int8Signed)
      .value("int8u", Chunk::Int8Unsigned)
      .value("int16s", Chunk::Int16Signed)
      .value("int16u", Chunk::Int16Unsigned)
      .value("int32", Chunk::Int32)
      .value("float32", Chunk::Float32)
      .value("float64", Chunk::Float64);

  m.def("size_chunk", &size_chunk);
  m.def("compat", &compat);
  m.def("convert", [](const py::object &v, Chunk t) { return to_py(convert(from_py(v), t)); });

  py::class_<MemConfig>(m, "MemConfig")
      .def(py::init(&make_config), py::arg("capacity") = py::none(),
           py::arg("check_alignment") = true)
      .def_property_readonly("capacity",
                             [](const MemConfig &c) { return opt(c.capacity.max_total_bytes); })
      .def_readonly("check_alignment", &MemConfig::check_alignment);

  py::class_<MemState>(m, "MemState")
      .def_property_readonly("nextblock", [](const MemState &s) { return s.nextblock().id; })
      .def_property_readonly("allocated_bytes", &MemState::allocated_bytes)
      .def("valid_blocks",
           [](const MemState &s) {
             std::vector<std::int64_t> out;
             for (BlockId b : s.valid_blocks())
               out.push_back(b.id);
             return out;
           })
      .def("contents",
           [](const MemState &s, std::int64_t b) {
             py::dict d;
             for (const auto &[ofs, datum] : s.contents(BlockId{b}).cells())
               d[py::int_(ofs)] = py::make_tuple(datum.chunk, to_py(datum.value));
             return d;
           })
      .def("__eq__", [](const MemState &a, const MemState &b) { return a == b; })
      .def("__repr__", [](const MemState &s) { return trace::describe(s, {}); });

  m.def("empty", &empty, py::arg("config") = MemConfig{});
  m.def("alloc", [](const MemState &s, Offset lo, Offset hi) -> py::object {
    auto a = alloc(s, lo, hi);
    if (!a)
      return py::none();
    return py::make_tuple(a->block.id, a->mem);
  });
  m.def("free", [](const MemState &s, std::int64_t b) { return opt(free(s, BlockId{b})); });
  m.def("free_list", [](const MemState &s, const std::vector<std::int64_t> &bs) {
    std::vector<BlockId> ids;
    for (auto b : bs)
      ids.push_back(BlockId{b});
    return opt(free_list(s, ids));
  });
  m.def("load", [](Chunk t, const MemState &s, std::int64_t b, Offset i) -> py::object {
    auto v = load(t, s, BlockId{b}, i);
    return v ? to_py(*v) : py::none();
  });
  m.def("store", [](Chunk t, const MemState &s, std::int64_t b, Offset i, const py::object &v) {
    return opt(store(t, s, BlockId{b}, i, from_py(v)));
  });
  m.def("valid_block", [](const MemState &s, std::int64_t b) { return valid_block(s, BlockId{b}); });
  m.def("fresh_block", [](const MemState &s, std::int64_t b) { return fresh_block(s, BlockId{b}); });
  m.def("bounds", [](const MemState &s, std::int64_t b) {
    const Bounds bd = bounds(s, BlockId{b});
    return py::make_tuple(bd.low, bd.high);
  });
  m.def("aligned", &aligned);
  m.def("valid_access", [](const MemState &s, Chunk t, std::int64_t b, Offset i) {
    return valid_access(s, t, BlockId{b}, i);
  });
  m.def("same_domain", &same_domain);

  m.def("val_lessdef", [](const py::object &a, const py::object &b) {
    return val_lessdef(from_py(a), from_py(b));
  });
  m.def("val_emb", [](const std::map<std::int64_t, std::pair<std::int64_t, std::int64_t>> &e,
                      const py::object &a, const py::object &b) {
    return val_emb(to_emb(e), from_py(a), from_py(b));
  });
  m.def("mem_lessdef", &mem_lessdef);
  m.def("mem_extends", &mem_extends);
  m.def("mem_inject",
        [](const std::map<std::int64_t, std::pair<std::int64_t, std::int64_t>> &e,
           const MemState &a, const MemState &b) { return mem_inject(to_emb(e), a, b); },
        py::arg("emb"), py::arg("m1"), py::arg("m2"));

  m.def(
      "run_trace",
      [](const std::string &text, std::optional<std::uint64_t> capacity, bool check_alignment) {
        auto parsed = trace::parse(text);
        if (auto *err = std::get_if<trace::ParseError>(&parsed))
          throw py::value_error(err->str());
        const trace::ExecReport r =
            trace::exec(std::get<trace::Trace>(parsed), make_config(capacity, check_alignment));
        py::dict d;
        d["ok"] = r.ok;
        d["outcomes"] = r.outcomes;
        d["failed_line"] = opt(r.failed_line);
        d["failure"] = r.failure;
        d["final_state"] = r.final_state;
        return d;
      },
      py::arg("text"), py::arg("capacity") = py::none(), py::arg("check_alignment") = true);

  m.def("law_names", [] {
    std::vector<std::string> out;
    for (const auto &l : lawcheck::all_laws())
      out.emplace_back(l.name);
    return out;
  });
  m.def(
      "run_laws",
      [](std::uint64_t seed, std::uint64_t cases, bool exhaustive,
         std::vector<std::string> only) {
        lawcheck::SuiteConfig cfg;
        cfg.seed = seed;
        cfg.random_cases = cases;
        cfg.exhaustive = exhaustive;
        cfg.only = std::move(only);
        std::string json;
        {
          py::gil_scoped_release release;
          json = lawcheck::to_json(lawcheck::run_suite(cfg));
        }
        return py::module_::import("json").attr("loads")(json);
      },
      py::arg("seed") = 42, py::arg("cases") = 1000, py::arg("exhaustive") = true,
      py::arg("only") = std::vector<std::string>{});
}
