from enum import Enum

class StatementKind(Enum):
    """
    The ten statements of the concurrent language model. Values are the
    keywords used in trace documents.
    """
    LOCALIZE = "localize"    # copy a global into a thread local (read of g)
    SHARE = "share"          # copy a thread local into a global (write of g)
    REQUIRE = "require"      # lock
    RELEASE = "release"      # unlock
    DUPLICATE = "duplicate"  # fork
    INITIATE = "initiate"    # join
    READY = "ready"          # start
    END = "end"              # exit
    SET1 = "set1"            # signal
    SET0 = "set0"            # wait

    @property
    def takes_local(self) -> bool:
        return self in (StatementKind.LOCALIZE, StatementKind.SHARE)

    @property
    def takes_global(self) -> bool:
        return self in (StatementKind.LOCALIZE, StatementKind.SHARE,
                        StatementKind.SET1, StatementKind.SET0)
