#pragma once

#include <stdexcept>
#include <string>

namespace spcasi {

// Thrown for invalid arguments and config values that fail validation.
class validation_error : public std::invalid_argument {
public:
    explicit validation_error(const std::string& msg) : std::invalid_argument(msg) {}
};

// Dimension mismatches between vectors/matrices/models.
class dimension_error : public validation_error {
public:
    explicit dimension_error(const std::string& msg) : validation_error(msg) {}
};

// Data that cannot be processed (zero-variance column, too few samples, ...).
class data_error : public std::runtime_error {
public:
    explicit data_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failures: non-finite objective, singular matrices past regularization.
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

// File and archive problems, with a kind tag so callers can distinguish them.
class store_error : public std::runtime_error {
public:
    enum class kind { io, version, malformed, invariant };

    store_error(kind k, const std::string& msg) : std::runtime_error(msg), kind_(k) {}
    kind which() const { return kind_; }

private:
    kind kind_;
};

}  // namespace spcasi
