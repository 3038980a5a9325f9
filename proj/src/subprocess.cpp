#include "ehaudit/subprocess.hpp"

#include <cerrno>
#include <chrono>
#include <csignal>
#include <cstring>
#include <stdexcept>

#include <fcntl.h>
#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>

namespace ehaudit {

RunResult run_shell(const std::string& command, const std::string& cwd,
                    double timeout_seconds) {
    int pipefd[2];
    if (pipe(pipefd) != 0) throw std::runtime_error("pipe() failed");

    pid_t pid = fork();
    if (pid < 0) {
        close(pipefd[0]);
        close(pipefd[1]);
        throw std::runtime_error("fork() failed");
    }
    if (pid == 0) {
        setpgid(0, 0); // own process group so a timeout kill reaps children
        close(pipefd[0]);
        dup2(pipefd[1], STDOUT_FILENO);
        dup2(pipefd[1], STDERR_FILENO);
        close(pipefd[1]);
        if (!cwd.empty() && chdir(cwd.c_str()) != 0) _exit(127);
        execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
        _exit(127);
    }

    close(pipefd[1]);
    fcntl(pipefd[0], F_SETFL, O_NONBLOCK);

    RunResult result;
    auto start = std::chrono::steady_clock::now();
    auto deadline = start + std::chrono::duration<double>(
                                timeout_seconds > 0 ? timeout_seconds : 1e18);

    bool exited = false;
    int status = 0;
    char buf[4096];
    while (true) {
        struct pollfd pfd{pipefd[0], POLLIN, 0};
        int timeout_ms = 100;
        int rc = poll(&pfd, 1, timeout_ms);
        if (rc > 0) {
            ssize_t n;
            while ((n = read(pipefd[0], buf, sizeof buf)) > 0)
                result.output.append(buf, static_cast<std::size_t>(n));
            if (n == 0) { // EOF: child closed its end
                if (waitpid(pid, &status, 0) == pid) exited = true;
                break;
            }
        }
        if (!exited) {
            pid_t w = waitpid(pid, &status, WNOHANG);
            if (w == pid) {
                exited = true;
                // drain whatever remains
                ssize_t n;
                while ((n = read(pipefd[0], buf, sizeof buf)) > 0)
                    result.output.append(buf, static_cast<std::size_t>(n));
                break;
            }
        }
        if (timeout_seconds > 0 && std::chrono::steady_clock::now() >= deadline) {
            result.timed_out = true;
            kill(-pid, SIGKILL);
            waitpid(pid, &status, 0);
            break;
        }
    }
    close(pipefd[0]);

    auto end = std::chrono::steady_clock::now();
    result.seconds = std::chrono::duration<double>(end - start).count();
    if (WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
    else if (WIFSIGNALED(status)) result.exit_code = 128 + WTERMSIG(status);
    return result;
}

} // namespace ehaudit
