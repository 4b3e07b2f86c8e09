from commands.nearfield import nearfield
from commands.propagator import propagator
from commands.report import report
from commands.waveguide import waveguide
from commands.window import window

COMMANDS = (report, propagator, window, waveguide, nearfield)
