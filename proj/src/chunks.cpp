#include "blockmem/chunks.hpp"

#include "blockmem/fault.hpp"

#include <bit>
#include <charconv>
#include <cstdio>

namespace blockmem {

namespace {

constexpr std::array<std::string_view, 7> kChunkNames = {
    "int8s", "int8u", "int16s", "int16u", "int32", "float32", "float64"};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t'))
    s.remove_suffix(1);
  return s;
}

template <class T> std::optional<T> parse_int(std::string_view s, int base = 10) {
  T out{};
  if (s.empty())
    return std::nullopt;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out, base);
  if (ec != std::errc{} || p != s.data() + s.size())
    return std::nullopt;
  return out;
}

Value convert_int(std::int64_t n, Chunk t) {
  const bool broken_sign = fault::active(fault::Fault::WrongSignExtension);
  switch (t) {
  case Chunk::Int8Signed:
    if (broken_sign)
      return Vint{n & 0xff};
    return Vint{static_cast<std::int8_t>(static_cast<std::uint8_t>(n & 0xff))};
  case Chunk::Int8Unsigned:
    return Vint{n & 0xff};
  case Chunk::Int16Signed:
    if (broken_sign)
      return Vint{n & 0xffff};
    return Vint{static_cast<std::int16_t>(static_cast<std::uint16_t>(n & 0xffff))};
  case Chunk::Int16Unsigned:
    return Vint{n & 0xffff};
  case Chunk::Int32:
    return Vint{static_cast<std::int32_t>(static_cast<std::uint32_t>(n))};
  case Chunk::Float32:
  case Chunk::Float64:
    return Vundef{};
  }
  return Vundef{};
}

} // namespace

std::string_view chunk_name(Chunk c) { return kChunkNames[static_cast<std::size_t>(c)]; }

std::optional<Chunk> parse_chunk(std::string_view token) {
  for (std::size_t k = 0; k < kChunkNames.size(); ++k)
    if (kChunkNames[k] == token)
      return static_cast<Chunk>(k);
  return std::nullopt;
}

Vfloat Vfloat::of(double d) { return Vfloat{std::bit_cast<std::uint64_t>(d)}; }

double Vfloat::value() const { return std::bit_cast<double>(bits); }

Value convert(const Value &v, Chunk t) {
  if (const auto *i = std::get_if<Vint>(&v))
    return convert_int(i->n, t);
  if (const auto *f = std::get_if<Vfloat>(&v)) {
    if (t == Chunk::Float64)
      return *f;
    if (t == Chunk::Float32)
      return Vfloat::of(static_cast<double>(static_cast<float>(f->value())));
    return Vundef{};
  }
  if (const auto *p = std::get_if<Vptr>(&v))
    return t == Chunk::Int32 ? Value{*p} : Value{Vundef{}};
  return Vundef{};
}

std::string to_string(BlockId b) { return std::to_string(b.id); }

std::string to_string(const Value &v) {
  struct Printer {
    std::string operator()(Vundef) const { return "undef"; }
    std::string operator()(Vint i) const { return "(int " + std::to_string(i.n) + ")"; }
    std::string operator()(Vfloat f) const {
      char buf[32];
      std::snprintf(buf, sizeof buf, "(float 0x%016llx)",
                    static_cast<unsigned long long>(f.bits));
      return buf;
    }
    std::string operator()(Vptr p) const {
      return "(ptr " + to_string(p.block) + " " + std::to_string(p.ofs) + ")";
    }
  };
  return std::visit(Printer{}, v);
}

std::optional<Value> parse_value(std::string_view text) {
  text = trim(text);
  if (text == "undef")
    return Value{Vundef{}};
  if (text.size() < 2 || text.front() != '(' || text.back() != ')')
    return std::nullopt;
  text = trim(text.substr(1, text.size() - 2));
  auto space = text.find_first_of(" \t");
  if (space == std::string_view::npos)
    return std::nullopt;
  std::string_view head = text.substr(0, space);
  std::string_view rest = trim(text.substr(space));

  if (head == "int") {
    if (auto n = parse_int<std::int64_t>(rest))
      return Value{Vint{*n}};
    return std::nullopt;
  }
  if (head == "float") {
    if (rest.starts_with("0x") || rest.starts_with("0X"))
      rest.remove_prefix(2);
    if (auto bits = parse_int<std::uint64_t>(rest, 16))
      return Value{Vfloat{*bits}};
    return std::nullopt;
  }
  if (head == "ptr") {
    auto sep = rest.find_first_of(" \t");
    if (sep == std::string_view::npos)
      return std::nullopt;
    auto b = parse_int<std::int64_t>(rest.substr(0, sep));
    auto i = parse_int<std::int64_t>(trim(rest.substr(sep)));
    if (!b || !i || *b < 1)
      return std::nullopt;
    return Value{Vptr{BlockId{*b}, *i}};
  }
  return std::nullopt;
}

} // namespace blockmem
