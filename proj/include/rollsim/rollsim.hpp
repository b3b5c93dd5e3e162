/*
 Copyright 2026 The rollsim Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#ifndef ROLLSIM_ROLLSIM_HPP
#define ROLLSIM_ROLLSIM_HPP

#include "rollsim/config.hpp"
#include "rollsim/control.hpp"
#include "rollsim/dynamics.hpp"
#include "rollsim/energetics.hpp"
#include "rollsim/errata.hpp"
#include "rollsim/io.hpp"
#include "rollsim/kinematics.hpp"
#include "rollsim/magnetics.hpp"
#include "rollsim/params.hpp"
#include "rollsim/simulate.hpp"
#include "rollsim/validate.hpp"

#endif  // ROLLSIM_ROLLSIM_HPP
