#pragma once

#include "parabolica/error.hpp"
#include "parabolica/number_field.hpp"
#include "parabolica/linear_algebra.hpp"
#include "parabolica/todd_coxeter.hpp"
#include "parabolica/coxeter_system.hpp"
#include "parabolica/coxeter_group.hpp"
#include "parabolica/reflection_geometry.hpp"
#include "parabolica/parabolic.hpp"
#include "parabolica/coxeter_complex.hpp"
#include "parabolica/smith_normal_form.hpp"
#include "parabolica/presentation.hpp"
#include "parabolica/relaxed.hpp"
#include "parabolica/homotopy.hpp"
#include "parabolica/serialize.hpp"
#include "parabolica/suites.hpp"
