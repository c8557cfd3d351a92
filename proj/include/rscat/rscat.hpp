#pragma once

#include "rscat/cavity.hpp"
#include "rscat/design.hpp"
#include "rscat/errors.hpp"
#include "rscat/herald.hpp"
#include "rscat/protocols.hpp"
#include "rscat/qstate.hpp"
#include "rscat/units.hpp"
