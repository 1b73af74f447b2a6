// Copyright 2026 The tilesamp Authors
// SPDX-License-Identifier: Apache-2.0

/// \file field_io.hpp
/// \brief Field snapshots.
///
/// Both formats store the model, the mask grid, the mask and the spectral
/// coefficients of every grid node.
///
/// CSV:
///
///     # tilesamp field v1
///     # model dim=2 M=16 s=5
///     # grid cell_lo=0,0 cell_hi=1,1
///     # name <set name>
///     index,mask,re,im
///     0,1,<re>,<im>
///     ...
///
/// Doubles are written with 17 significant digits, so reading back is exact.
///
/// Binary (little-endian):
///
///     char[8]  "TSFIELD1"
///     int32    dim, M, s
///     int32    cell_lo[dim], cell_hi[dim]
///     uint32   name length, then the name bytes
///     uint64   node count
///     uint8    mask[count]
///     float64  (re, im)[count]

#ifndef TILESAMP_FIELD_IO_HPP
#define TILESAMP_FIELD_IO_HPP

#include <iosfwd>

#include "tilesamp/spectral.hpp"

namespace tilesamp {

void write_field_csv(std::ostream& out, const BandlimitedField& field);
BandlimitedField read_field_csv(std::istream& in);

void write_field_binary(std::ostream& out, const BandlimitedField& field);
BandlimitedField read_field_binary(std::istream& in);

}  // namespace tilesamp

#endif  // TILESAMP_FIELD_IO_HPP
