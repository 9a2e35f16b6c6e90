// Copyright 2026 The bernmix Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BERNMIX_ERRORS_HPP
#define BERNMIX_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bernmix {

/// Base class for all bernmix exceptions.
class error : public std::runtime_error {
 public:
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid argument or out-of-domain input (bad index, point outside box, ...).
class domain_error : public error {
 public:
  explicit domain_error(const std::string& what) : error(what) {}
};

/// Likelihood maximization failed (zero-density observation, bad init).
class fit_error : public error {
 public:
  explicit fit_error(const std::string& what) : error(what) {}
};

/// Degree selection failed (degenerate marginal, no informative change point).
class selection_error : public error {
 public:
  explicit selection_error(const std::string& what) : error(what) {}
};

/// Box transform failed (row outside the support box, zero data range).
class transform_error : public error {
 public:
  explicit transform_error(const std::string& what) : error(what) {}
};

/// Numerical evaluation failed (nonpositive truth density at a node, ...).
class evaluation_error : public error {
 public:
  explicit evaluation_error(const std::string& what) : error(what) {}
};

/// Malformed file or document (CSV, model JSON).
class io_error : public error {
 public:
  explicit io_error(const std::string& what) : error(what) {}
};

}  // namespace bernmix

#endif  // BERNMIX_ERRORS_HPP
