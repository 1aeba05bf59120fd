#pragma once

#include "degenzeta/functions.hpp"
#include "degenzeta/harmonic.hpp"
#include "degenzeta/identities.hpp"
#include "degenzeta/integrals.hpp"
#include "degenzeta/kernel.hpp"
#include "degenzeta/zeta.hpp"
