#pragma once

#include <map>
#include <string>

namespace ehaudit {

/// Built-in inheritance table for the JDK exception types a library project
/// is likely to mention (simple name -> direct superclass simple name).
const std::map<std::string, std::string>& jdk_exception_edges();

} // namespace ehaudit
