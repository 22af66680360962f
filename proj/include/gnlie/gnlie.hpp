#ifndef GNLIE_GNLIE_HPP
#define GNLIE_GNLIE_HPP

// Umbrella header. Individual headers are cheap to include on their own;
// this exists for consumers who want everything.

#include "gnlie/battery.hpp"
#include "gnlie/builtin_scenes.hpp"
#include "gnlie/diff.hpp"
#include "gnlie/eval.hpp"
#include "gnlie/killing.hpp"
#include "gnlie/lie_spinor.hpp"
#include "gnlie/lie_tensor.hpp"
#include "gnlie/numeric_lie.hpp"
#include "gnlie/parse.hpp"
#include "gnlie/report.hpp"
#include "gnlie/scene.hpp"
#include "gnlie/simplify.hpp"
#include "gnlie/transport.hpp"

#endif
