/*
   Copyright 2026 The diffmon authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef DIFFMON_DIFFMON_HPP
#define DIFFMON_DIFFMON_HPP

#include "diffmon/campaign.hpp"
#include "diffmon/errors.hpp"
#include "diffmon/expr.hpp"
#include "diffmon/json_report.hpp"
#include "diffmon/monomial_spec.hpp"
#include "diffmon/numeric.hpp"
#include "diffmon/polynomial.hpp"
#include "diffmon/ppoint.hpp"
#include "diffmon/rational.hpp"
#include "diffmon/rational_function.hpp"

#endif // DIFFMON_DIFFMON_HPP
