#pragma once

#include "cubepack/certificate.hpp"

#include <string>

namespace cubepack {

struct ExportOptions {
    std::size_t slice_axis = 2;
    Dyadic slice_at;
    double size_px = 800;
};

/// Renders a certificate: "svg2d" (d = 2 only), "svg-slice" (d = 3
/// cross-section at slice_axis = slice_at) or "csv" (stats table).
/// Output is a deterministic function of the certificate and options.
/// Throws std::invalid_argument on a format/dimension mismatch.
std::string export_certificate(const Certificate& cert, const std::string& format, const ExportOptions& options = {});

}  // namespace cubepack
