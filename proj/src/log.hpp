/* Copyright 2026 The archsynth Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef ARCHSYNTH_SRC_LOG_HPP_
#define ARCHSYNTH_SRC_LOG_HPP_

#include <spdlog/spdlog.h>

namespace archsynth {

// Library logger on stderr. Level comes from ARCHSYNTH_LOG_LEVEL
// (trace, debug, info, warn, error, critical, off); default warn.
spdlog::logger& logger();

}  // namespace archsynth

#endif  // ARCHSYNTH_SRC_LOG_HPP_
