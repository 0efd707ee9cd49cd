#pragma once

#include <stdexcept>
#include <string>

namespace ssdm {

// Error families map onto the CLI exit codes: config=2, data=3, numeric=4.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct config_error : error {
    using error::error;
};

struct data_error : error {
    using error::error;
};

struct numeric_error : error {
    using error::error;
};

// Bad hyperparameters, invalid ranges, unknown names.
struct parameter_error : config_error {
    using config_error::config_error;
};

// Tensor/layer shape mismatches.
struct dimension_error : config_error {
    using config_error::config_error;
};

// Structurally invalid network specs.
struct spec_error : config_error {
    using config_error::config_error;
};

// Out-of-range labels or element indices in supplied data.
struct index_error : data_error {
    using data_error::data_error;
};

// Malformed files (models, images, tables).
struct format_error : data_error {
    using data_error::data_error;
};

// Degenerate statistical input (zero variance and friends).
struct degenerate_error : data_error {
    using data_error::data_error;
};

}  // namespace ssdm
