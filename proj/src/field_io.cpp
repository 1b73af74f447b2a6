// Copyright 2026 The tilesamp Authors
// SPDX-License-Identifier: Apache-2.0

#include "tilesamp/field_io.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>

#include "tilesamp/set_expr.hpp"

namespace tilesamp {

namespace {

std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s;
}

std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> v;
  for (const auto& part : split_top_level(s)) v.push_back(std::stoi(part));
  return v;
}

std::string exact(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string expect_header(std::istream& in, const std::string& prefix) {
  std::string line;
  if (!std::getline(in, line) || line.rfind(prefix, 0) != 0)
    throw InvalidArgument("field csv: expected a line starting with '" + prefix + "'");
  return line.substr(prefix.size());
}

std::string value_of(const std::string& fields, const std::string& key) {
  std::istringstream ss(fields);
  std::string tok;
  while (ss >> tok)
    if (tok.rfind(key + "=", 0) == 0) return tok.substr(key.size() + 1);
  throw InvalidArgument("field csv: missing key '" + key + "'");
}

static_assert(std::endian::native == std::endian::little,
              "binary field format assumes a little-endian host");

template <class T>
void put(std::ostream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
T get(std::istream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof v);
  if (!in) throw InvalidArgument("field binary: truncated input");
  return v;
}

BandlimitedField assemble(const TorusModel& model, GridSpec grid, std::vector<std::uint8_t> mask,
                          std::string name, ComplexVector F) {
  grid.resolution = model.resolution;
  // Diameter and boundary are not stored; they only feed the default
  // oversampling, which is fixed by the stored model.
  RasterizedSet set(grid, std::move(mask), 0.0, 0.0, std::move(name));
  return BandlimitedField(model, std::move(set), std::move(F));
}

}  // namespace

void write_field_csv(std::ostream& out, const BandlimitedField& field) {
  const auto& m = field.model();
  const auto& g = field.grid();
  out << "# tilesamp field v1\n";
  out << "# model dim=" << m.dim << " M=" << m.resolution << " s=" << m.oversampling << "\n";
  out << "# grid cell_lo=" << join_ints(g.cell_lo) << " cell_hi=" << join_ints(g.cell_hi) << "\n";
  out << "# name " << field.mask().name() << "\n";
  out << "index,mask,re,im\n";
  const auto F = field.spectrum();
  for (std::size_t i = 0; i < F.size(); ++i)
    out << i << ',' << (field.mask().at_flat(i) ? 1 : 0) << ',' << exact(F[i].real()) << ','
        << exact(F[i].imag()) << '\n';
}

BandlimitedField read_field_csv(std::istream& in) {
  expect_header(in, "# tilesamp field v1");
  const std::string model_line = expect_header(in, "# model ");
  TorusModel model{std::stoi(value_of(model_line, "dim")), std::stoi(value_of(model_line, "M")),
                   std::stoi(value_of(model_line, "s"))};
  const std::string grid_line = expect_header(in, "# grid ");
  GridSpec grid;
  grid.cell_lo = parse_ints(value_of(grid_line, "cell_lo"));
  grid.cell_hi = parse_ints(value_of(grid_line, "cell_hi"));
  grid.resolution = model.resolution;
  grid.validate();
  std::string name = expect_header(in, "# name ");
  expect_header(in, "index,mask,re,im");

  const std::size_t n = grid.node_count();
  std::vector<std::uint8_t> mask(n, 0);
  ComplexVector F(n);
  std::string line;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto parts = split_top_level(line);
    if (parts.size() != 4) throw InvalidArgument("field csv: malformed row '" + line + "'");
    const std::size_t idx = std::stoull(parts[0]);
    if (idx >= n) throw InvalidArgument("field csv: index out of range");
    mask[idx] = parts[1] == "1" ? 1 : 0;
    F[idx] = {std::strtod(parts[2].c_str(), nullptr), std::strtod(parts[3].c_str(), nullptr)};
    ++rows;
  }
  if (rows != n) throw InvalidArgument("field csv: expected " + std::to_string(n) + " rows");
  return assemble(model, std::move(grid), std::move(mask), std::move(name), std::move(F));
}

void write_field_binary(std::ostream& out, const BandlimitedField& field) {
  const auto& m = field.model();
  const auto& g = field.grid();
  out.write("TSFIELD1", 8);
  put<std::int32_t>(out, m.dim);
  put<std::int32_t>(out, m.resolution);
  put<std::int32_t>(out, m.oversampling);
  for (int v : g.cell_lo) put<std::int32_t>(out, v);
  for (int v : g.cell_hi) put<std::int32_t>(out, v);
  const auto& name = field.mask().name();
  put<std::uint32_t>(out, static_cast<std::uint32_t>(name.size()));
  out.write(name.data(), static_cast<std::streamsize>(name.size()));
  const auto F = field.spectrum();
  put<std::uint64_t>(out, F.size());
  for (std::size_t i = 0; i < F.size(); ++i)
    put<std::uint8_t>(out, field.mask().at_flat(i) ? 1 : 0);
  for (const auto& z : F) {
    put<double>(out, z.real());
    put<double>(out, z.imag());
  }
}

BandlimitedField read_field_binary(std::istream& in) {
  char magic[8];
  in.read(magic, 8);
  if (!in || std::memcmp(magic, "TSFIELD1", 8) != 0)
    throw InvalidArgument("field binary: bad magic");
  TorusModel model;
  model.dim = get<std::int32_t>(in);
  model.resolution = get<std::int32_t>(in);
  model.oversampling = get<std::int32_t>(in);
  if (model.dim < 1 || model.dim > 16) throw InvalidArgument("field binary: bad dimension");
  GridSpec grid;
  grid.resolution = model.resolution;
  for (int a = 0; a < model.dim; ++a) grid.cell_lo.push_back(get<std::int32_t>(in));
  for (int a = 0; a < model.dim; ++a) grid.cell_hi.push_back(get<std::int32_t>(in));
  grid.validate();
  const auto name_len = get<std::uint32_t>(in);
  std::string name(name_len, '\0');
  in.read(name.data(), name_len);
  const auto n = get<std::uint64_t>(in);
  if (n != grid.node_count()) throw InvalidArgument("field binary: node count mismatch");
  std::vector<std::uint8_t> mask(n);
  for (auto& b : mask) b = get<std::uint8_t>(in);
  ComplexVector F(n);
  for (auto& z : F) {
    const double re = get<double>(in);
    const double im = get<double>(in);
    z = {re, im};
  }
  return assemble(model, std::move(grid), std::move(mask), std::move(name), std::move(F));
}

}  // namespace tilesamp
