#pragma once

namespace aggmdp {

#ifndef AGGMDP_GIT_REVISION
#define AGGMDP_GIT_REVISION "unknown"
#endif

inline const char* version_string() { return "aggmdp 0.1.0 (" AGGMDP_GIT_REVISION ")"; }

}  // namespace aggmdp
