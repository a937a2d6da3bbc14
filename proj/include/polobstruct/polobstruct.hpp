#pragma once

#include "polobstruct/integer.hpp"
#include "polobstruct/matrix.hpp"
#include "polobstruct/poly.hpp"
#include "polobstruct/intlinalg.hpp"
#include "polobstruct/bigfloat.hpp"
#include "polobstruct/cyclotomic.hpp"
#include "polobstruct/twist.hpp"
#include "polobstruct/galmod.hpp"
#include "polobstruct/kergroup.hpp"
#include "polobstruct/matrix_io.hpp"
#include "polobstruct/model_io.hpp"
#include "polobstruct/report.hpp"
